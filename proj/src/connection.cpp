#include "katz/connection.hpp"

#include <algorithm>

namespace katz {

namespace {

void require_same_rank(const ModuleVector& a, const ModuleVector& b)
{
    if (a.rank() != b.rank()) {
        throw DimensionError("module vectors of rank " + std::to_string(a.rank()) + " and " +
                             std::to_string(b.rank()));
    }
}

void require_shape(const Connection& conn, const ModuleVector& m)
{
    if (m.rank() != conn.rank()) {
        throw DimensionError("vector rank " + std::to_string(m.rank()) + " does not match connection rank " +
                             std::to_string(conn.rank()));
    }
    if (m.n_vars() != conn.n_vars() || m.trunc_order() != conn.trunc_order()) {
        throw DimensionError("vector series shape does not match the connection");
    }
}

} // namespace

// ModuleVector

ModuleVector::ModuleVector(std::vector<TruncatedSeries> entries) : entries_(std::move(entries))
{
    if (entries_.empty()) {
        throw DimensionError("module vector must have rank >= 1");
    }
    unsigned p = entries_.front().precision();
    for (const auto& e : entries_) {
        require_compatible(entries_.front(), e);
        p = std::min(p, e.precision());
    }
    for (auto& e : entries_) {
        if (e.precision() != p) {
            e = e.truncated(p);
        }
    }
}

ModuleVector ModuleVector::zero(std::size_t rank, std::size_t n_vars, unsigned trunc_order)
{
    return ModuleVector(std::vector<TruncatedSeries>(rank, TruncatedSeries(n_vars, trunc_order)));
}

ModuleVector ModuleVector::basis(std::size_t rank, std::size_t k, std::size_t n_vars, unsigned trunc_order)
{
    if (k >= rank) {
        throw DimensionError("basis index out of range");
    }
    std::vector<TruncatedSeries> e(rank, TruncatedSeries(n_vars, trunc_order));
    e[k] = TruncatedSeries::constant(n_vars, trunc_order, 1);
    return ModuleVector(std::move(e));
}

std::vector<Rational> ModuleVector::constant_term() const
{
    std::vector<Rational> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) {
        out.push_back(eval_at_zero(e));
    }
    return out;
}

bool ModuleVector::is_zero() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.is_zero(); });
}

ModuleVector ModuleVector::truncated(unsigned p) const
{
    std::vector<TruncatedSeries> e;
    e.reserve(entries_.size());
    for (const auto& s : entries_) {
        e.push_back(s.truncated(p));
    }
    return ModuleVector(std::move(e));
}

ModuleVector operator+(const ModuleVector& a, const ModuleVector& b)
{
    require_same_rank(a, b);
    std::vector<TruncatedSeries> e;
    e.reserve(a.rank());
    for (std::size_t k = 0; k < a.rank(); ++k) {
        e.push_back(a[k] + b[k]);
    }
    return ModuleVector(std::move(e));
}

ModuleVector operator-(const ModuleVector& a, const ModuleVector& b)
{
    require_same_rank(a, b);
    std::vector<TruncatedSeries> e;
    e.reserve(a.rank());
    for (std::size_t k = 0; k < a.rank(); ++k) {
        e.push_back(a[k] - b[k]);
    }
    return ModuleVector(std::move(e));
}

ModuleVector operator*(const TruncatedSeries& f, const ModuleVector& m)
{
    std::vector<TruncatedSeries> e;
    e.reserve(m.rank());
    for (const auto& s : m.entries()) {
        e.push_back(f * s);
    }
    return ModuleVector(std::move(e));
}

ModuleVector operator*(const Rational& c, const ModuleVector& m)
{
    std::vector<TruncatedSeries> e;
    e.reserve(m.rank());
    for (const auto& s : m.entries()) {
        e.push_back(c * s);
    }
    return ModuleVector(std::move(e));
}

bool operator==(const ModuleVector& a, const ModuleVector& b)
{
    if (a.rank() != b.rank()) {
        return false;
    }
    for (std::size_t k = 0; k < a.rank(); ++k) {
        if (!(a[k] == b[k])) {
            return false;
        }
    }
    return true;
}

// SeriesMatrix

SeriesMatrix::SeriesMatrix(std::size_t rows, std::size_t cols, std::vector<TruncatedSeries> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries))
{
    if (rows == 0 || cols == 0 || entries_.size() != rows * cols) {
        throw DimensionError("series matrix needs " + std::to_string(rows) + "x" + std::to_string(cols) +
                             " >= 1x1 entries, got " + std::to_string(entries_.size()));
    }
    for (const auto& e : entries_) {
        require_compatible(entries_.front(), e);
    }
}

SeriesMatrix SeriesMatrix::zero(std::size_t rows, std::size_t cols, std::size_t n_vars, unsigned trunc_order)
{
    return SeriesMatrix(rows, cols, std::vector<TruncatedSeries>(rows * cols, TruncatedSeries(n_vars, trunc_order)));
}

SeriesMatrix SeriesMatrix::identity(std::size_t size, std::size_t n_vars, unsigned trunc_order)
{
    std::vector<TruncatedSeries> e(size * size, TruncatedSeries(n_vars, trunc_order));
    for (std::size_t k = 0; k < size; ++k) {
        e[k * size + k] = TruncatedSeries::constant(n_vars, trunc_order, 1);
    }
    return SeriesMatrix(size, size, std::move(e));
}

SeriesMatrix SeriesMatrix::from_columns(std::span<const ModuleVector> columns)
{
    if (columns.empty()) {
        throw DimensionError("no columns");
    }
    const std::size_t rows = columns.front().rank();
    std::vector<TruncatedSeries> e(rows * columns.size(), columns.front()[0]);
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].rank() != rows) {
            throw DimensionError("columns of different rank");
        }
        for (std::size_t r = 0; r < rows; ++r) {
            e[r * columns.size() + c] = columns[c][r];
        }
    }
    return SeriesMatrix(rows, columns.size(), std::move(e));
}

unsigned SeriesMatrix::precision() const
{
    unsigned p = entries_.front().precision();
    for (const auto& e : entries_) {
        p = std::min(p, e.precision());
    }
    return p;
}

ModuleVector SeriesMatrix::column(std::size_t c) const
{
    std::vector<TruncatedSeries> e;
    e.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        e.push_back((*this)(r, c));
    }
    return ModuleVector(std::move(e));
}

RationalMatrix SeriesMatrix::constant_matrix() const
{
    RationalMatrix m(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            m(r, c) = eval_at_zero((*this)(r, c));
        }
    }
    return m;
}

bool SeriesMatrix::is_zero() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.is_zero(); });
}

SeriesMatrix SeriesMatrix::truncated(unsigned p) const
{
    std::vector<TruncatedSeries> e;
    e.reserve(entries_.size());
    for (const auto& s : entries_) {
        e.push_back(s.truncated(p));
    }
    return SeriesMatrix(rows_, cols_, std::move(e));
}

namespace {

void require_same_shape(const SeriesMatrix& a, const SeriesMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("matrix shapes differ");
    }
}

template <class Op>
SeriesMatrix entrywise(const SeriesMatrix& a, const SeriesMatrix& b, Op op)
{
    require_same_shape(a, b);
    std::vector<TruncatedSeries> e;
    e.reserve(a.entries().size());
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        e.push_back(op(a.entries()[k], b.entries()[k]));
    }
    return SeriesMatrix(a.rows(), a.cols(), std::move(e));
}

} // namespace

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b)
{
    return entrywise(a, b, [](const auto& x, const auto& y) { return x + y; });
}

SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b)
{
    return entrywise(a, b, [](const auto& x, const auto& y) { return x - y; });
}

SeriesMatrix operator-(const SeriesMatrix& a)
{
    std::vector<TruncatedSeries> e;
    e.reserve(a.entries().size());
    for (const auto& s : a.entries()) {
        e.push_back(-s);
    }
    return SeriesMatrix(a.rows(), a.cols(), std::move(e));
}

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b)
{
    if (a.cols() != b.rows()) {
        throw DimensionError("matrix product shape mismatch");
    }
    const unsigned p = std::min(a.precision(), b.precision());
    std::vector<TruncatedSeries> e;
    e.reserve(a.rows() * b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
            TruncatedSeries acc(a.n_vars(), a.trunc_order(), p);
            for (std::size_t k = 0; k < a.cols(); ++k) {
                if (!a(r, k).is_zero() && !b(k, c).is_zero()) {
                    acc = acc + a(r, k) * b(k, c);
                }
            }
            e.push_back(std::move(acc));
        }
    }
    return SeriesMatrix(a.rows(), b.cols(), std::move(e));
}

ModuleVector operator*(const SeriesMatrix& a, const ModuleVector& m)
{
    if (a.cols() != m.rank()) {
        throw DimensionError("matrix-vector shape mismatch");
    }
    const unsigned p = std::min(a.precision(), m.precision());
    std::vector<TruncatedSeries> e;
    e.reserve(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        TruncatedSeries acc(m.n_vars(), m.trunc_order(), p);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (!a(r, k).is_zero() && !m[k].is_zero()) {
                acc = acc + a(r, k) * m[k];
            }
        }
        e.push_back(std::move(acc));
    }
    return ModuleVector(std::move(e));
}

bool operator==(const SeriesMatrix& a, const SeriesMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        if (!(a.entries()[k] == b.entries()[k])) {
            return false;
        }
    }
    return true;
}

SeriesMatrix partial(std::size_t i, const SeriesMatrix& m)
{
    std::vector<TruncatedSeries> e;
    e.reserve(m.entries().size());
    for (const auto& s : m.entries()) {
        e.push_back(partial(i, s));
    }
    return SeriesMatrix(m.rows(), m.cols(), std::move(e));
}

SeriesMatrix restrict_last(const SeriesMatrix& m)
{
    std::vector<TruncatedSeries> e;
    e.reserve(m.entries().size());
    for (const auto& s : m.entries()) {
        e.push_back(restrict_last(s));
    }
    return SeriesMatrix(m.rows(), m.cols(), std::move(e));
}

// Curvature and Connection

IntegrabilityError::IntegrabilityError(CurvatureWitness w)
    : Error("connection is not integrable: curvature (" + std::to_string(w.i + 1) + "," + std::to_string(w.j + 1) +
            ") has entry [" + std::to_string(w.row + 1) + "," + std::to_string(w.col + 1) + "] = " + format(w.entry)),
      witness_(std::move(w))
{
}

SeriesMatrix curvature(std::span<const SeriesMatrix> coeffs, std::size_t i, std::size_t j)
{
    if (i >= coeffs.size() || j >= coeffs.size()) {
        throw DimensionError("curvature index out of range");
    }
    const SeriesMatrix& ai = coeffs[i];
    const SeriesMatrix& aj = coeffs[j];
    const unsigned p = std::min(ai.precision(), aj.precision());
    if (p == 0) {
        throw PrecisionError("curvature needs coefficient precision >= 1");
    }
    return (partial(i, aj) - partial(j, ai) + (ai * aj - aj * ai)).truncated(p - 1);
}

std::optional<CurvatureWitness> find_curvature(std::span<const SeriesMatrix> coeffs)
{
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        for (std::size_t j = i + 1; j < coeffs.size(); ++j) {
            const SeriesMatrix f = curvature(coeffs, i, j);
            for (std::size_t r = 0; r < f.rows(); ++r) {
                for (std::size_t c = 0; c < f.cols(); ++c) {
                    if (!f(r, c).is_zero()) {
                        return CurvatureWitness{i, j, r, c, f(r, c)};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

Connection::Connection(std::vector<SeriesMatrix> coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.empty()) {
        throw DimensionError("connection needs at least one variable");
    }
    const SeriesMatrix& first = coeffs_.front();
    n_vars_ = coeffs_.size();
    rank_ = first.rows();
    trunc_order_ = first.trunc_order();
    if (trunc_order_ == 0) {
        throw DimensionError("connection needs truncation order >= 1");
    }
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const SeriesMatrix& a = coeffs_[i];
        if (a.rows() != rank_ || a.cols() != rank_) {
            throw DimensionError("coefficient A" + std::to_string(i + 1) + " is not " + std::to_string(rank_) + "x" +
                                 std::to_string(rank_));
        }
        if (a.n_vars() != n_vars_ || a.trunc_order() != trunc_order_) {
            throw DimensionError("coefficient A" + std::to_string(i + 1) + " has series in " +
                                 std::to_string(a.n_vars()) + " variables at order " +
                                 std::to_string(a.trunc_order()) + ", expected " + std::to_string(n_vars_) +
                                 " at order " + std::to_string(trunc_order_));
        }
        if (a.precision() != trunc_order_) {
            throw PrecisionError("coefficient A" + std::to_string(i + 1) + " is not at full precision");
        }
    }
    if (auto w = find_curvature(coeffs_)) {
        throw IntegrabilityError(std::move(*w));
    }
}

Connection Connection::trivial(std::size_t n_vars, std::size_t rank, unsigned trunc_order)
{
    return Connection(std::vector<SeriesMatrix>(n_vars, SeriesMatrix::zero(rank, rank, n_vars, trunc_order)));
}

// Operators

ModuleVector apply_D(const Connection& conn, std::size_t i, const ModuleVector& m)
{
    require_shape(conn, m);
    if (i >= conn.n_vars()) {
        throw DimensionError("operator index " + std::to_string(i + 1) + " out of range 1.." +
                             std::to_string(conn.n_vars()));
    }
    if (m.precision() == 0) {
        throw PrecisionError("D_i needs precision >= 1");
    }
    std::vector<TruncatedSeries> d;
    d.reserve(m.rank());
    for (const auto& e : m.entries()) {
        d.push_back(partial(i, e));
    }
    return ModuleVector(std::move(d)) + conn.coeff(i) * m;
}

ModuleVector apply_divided_D(const Connection& conn, std::size_t i, unsigned j, const ModuleVector& m)
{
    require_shape(conn, m);
    if (j > m.precision()) {
        throw PrecisionError("divided power of order " + std::to_string(j) + " exceeds precision " +
                             std::to_string(m.precision()));
    }
    ModuleVector v = m;
    for (unsigned s = 0; s < j; ++s) {
        v = apply_D(conn, i, v);
    }
    return j < 2 ? v : Rational(1) / factorial(j) * v;
}

ModuleVector apply_DJ(const Connection& conn, const MultiIndex& J, const ModuleVector& m)
{
    if (J.size() != conn.n_vars()) {
        throw DimensionError("multi-index " + J.to_string() + " has wrong length");
    }
    if (J.degree() > m.precision()) {
        throw PrecisionError("D^J with |J| = " + std::to_string(J.degree()) + " exceeds precision " +
                             std::to_string(m.precision()));
    }
    ModuleVector v = m;
    for (std::size_t i = 0; i < J.size(); ++i) {
        if (J[i] != 0) {
            v = apply_divided_D(conn, i, J[i], v);
        }
    }
    return v;
}

bool is_flat(const Connection& conn, const ModuleVector& m)
{
    for (std::size_t i = 0; i < conn.n_vars(); ++i) {
        if (!apply_D(conn, i, m).is_zero()) {
            return false;
        }
    }
    return true;
}

} // namespace katz
