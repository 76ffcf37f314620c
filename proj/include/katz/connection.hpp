#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "katz/errors.hpp"
#include "katz/linalg.hpp"
#include "katz/series.hpp"

namespace katz {

/// Element of the free module M = R^r, truncated at m^(d+1). All entries
/// share n_vars, trunc_order and precision; construction lowers every entry
/// to the smallest precision present.
class ModuleVector {
public:
    explicit ModuleVector(std::vector<TruncatedSeries> entries);

    static ModuleVector zero(std::size_t rank, std::size_t n_vars, unsigned trunc_order);
    /// Standard basis vector e_{k+1}.
    static ModuleVector basis(std::size_t rank, std::size_t k, std::size_t n_vars, unsigned trunc_order);

    std::size_t rank() const noexcept { return entries_.size(); }
    std::size_t n_vars() const { return entries_.front().n_vars(); }
    unsigned trunc_order() const { return entries_.front().trunc_order(); }
    unsigned precision() const { return entries_.front().precision(); }

    const TruncatedSeries& operator[](std::size_t k) const { return entries_[k]; }
    const std::vector<TruncatedSeries>& entries() const noexcept { return entries_; }

    std::vector<Rational> constant_term() const;
    bool is_zero() const;
    ModuleVector truncated(unsigned p) const;

    friend ModuleVector operator+(const ModuleVector& a, const ModuleVector& b);
    friend ModuleVector operator-(const ModuleVector& a, const ModuleVector& b);
    friend ModuleVector operator*(const TruncatedSeries& f, const ModuleVector& m);
    friend ModuleVector operator*(const Rational& c, const ModuleVector& m);
    /// Entrywise equality at the common precision.
    friend bool operator==(const ModuleVector& a, const ModuleVector& b);

private:
    std::vector<TruncatedSeries> entries_;
};

/// Dense rows x cols matrix of series; precision is the minimum entry precision.
class SeriesMatrix {
public:
    SeriesMatrix(std::size_t rows, std::size_t cols, std::vector<TruncatedSeries> entries);

    static SeriesMatrix zero(std::size_t rows, std::size_t cols, std::size_t n_vars, unsigned trunc_order);
    static SeriesMatrix identity(std::size_t size, std::size_t n_vars, unsigned trunc_order);
    static SeriesMatrix from_columns(std::span<const ModuleVector> columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t n_vars() const { return entries_.front().n_vars(); }
    unsigned trunc_order() const { return entries_.front().trunc_order(); }
    unsigned precision() const;

    const TruncatedSeries& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    const std::vector<TruncatedSeries>& entries() const noexcept { return entries_; }

    ModuleVector column(std::size_t c) const;
    RationalMatrix constant_matrix() const;
    bool is_zero() const;
    SeriesMatrix truncated(unsigned p) const;

    friend SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b);
    friend SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b);
    friend SeriesMatrix operator-(const SeriesMatrix& a);
    friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
    friend ModuleVector operator*(const SeriesMatrix& a, const ModuleVector& m);
    friend bool operator==(const SeriesMatrix& a, const SeriesMatrix& b);

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<TruncatedSeries> entries_;
};

/// Entrywise d/dx_{i+1}.
SeriesMatrix partial(std::size_t i, const SeriesMatrix& m);
SeriesMatrix restrict_last(const SeriesMatrix& m);

/// Location and value of a nonzero curvature entry (0-based indices).
struct CurvatureWitness {
    std::size_t i;
    std::size_t j;
    std::size_t row;
    std::size_t col;
    TruncatedSeries entry;
};

class IntegrabilityError : public Error {
public:
    explicit IntegrabilityError(CurvatureWitness w);
    const CurvatureWitness& witness() const noexcept { return witness_; }

private:
    CurvatureWitness witness_;
};

/// d_i A_j - d_j A_i + A_i A_j - A_j A_i at precision d-1, for raw
/// coefficient matrices that have not been validated. Indices are 0-based.
SeriesMatrix curvature(std::span<const SeriesMatrix> coeffs, std::size_t i, std::size_t j);

/// First nonzero curvature entry over all pairs i < j, if any.
std::optional<CurvatureWitness> find_curvature(std::span<const SeriesMatrix> coeffs);

/// Integrable connection D_i = d_i + A_i on R^r, truncated at order d.
///
/// The constructor checks shapes, requires every A_i at full precision d,
/// and rejects non-integrable data with IntegrabilityError carrying the
/// offending (i, j) and curvature entry.
class Connection {
public:
    explicit Connection(std::vector<SeriesMatrix> coeffs);

    std::size_t n_vars() const noexcept { return n_vars_; }
    std::size_t rank() const noexcept { return rank_; }
    unsigned trunc_order() const noexcept { return trunc_order_; }
    const SeriesMatrix& coeff(std::size_t i) const { return coeffs_.at(i); }
    const std::vector<SeriesMatrix>& coeffs() const noexcept { return coeffs_; }

    /// The trivial connection A_i = 0.
    static Connection trivial(std::size_t n_vars, std::size_t rank, unsigned trunc_order);

private:
    std::size_t n_vars_;
    std::size_t rank_;
    unsigned trunc_order_;
    std::vector<SeriesMatrix> coeffs_;
};

/// D_i m = d_i m + A_i m (0-based i); precision drops by one.
ModuleVector apply_D(const Connection& conn, std::size_t i, const ModuleVector& m);

/// Divided power (1/j!) D_i^j m; precision drops by j.
ModuleVector apply_divided_D(const Connection& conn, std::size_t i, unsigned j, const ModuleVector& m);

/// D^(J) m: divided powers D_i^(j_i) composed in ascending i (D_1 first).
/// Under integrability the order does not matter.
ModuleVector apply_DJ(const Connection& conn, const MultiIndex& J, const ModuleVector& m);

/// D_i m = 0 at precision(m) - 1 for every i.
bool is_flat(const Connection& conn, const ModuleVector& m);

} // namespace katz
