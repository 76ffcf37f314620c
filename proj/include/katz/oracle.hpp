#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "katz/cartier.hpp"

namespace katz {

/// Seeded generator for corpus data. A fixed engine with explicit
/// reduction keeps output identical across standard libraries
/// (std distributions are implementation-defined).
class CorpusRng {
public:
    explicit CorpusRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }
    std::int64_t between(std::int64_t lo, std::int64_t hi);

    /// p/q with 0 < |p| <= bound, 1 <= q <= bound.
    Rational nonzero_rational(unsigned bound);
    /// Random monomial of total degree exactly `degree`.
    MultiIndex monomial(std::size_t n_vars, unsigned degree);
    /// Up to max_terms random terms of degree min_degree..trunc_order.
    TruncatedSeries series(std::size_t n_vars, unsigned trunc_order, unsigned bound, unsigned max_terms,
                           unsigned min_degree = 0);
    ModuleVector vector(std::size_t rank, std::size_t n_vars, unsigned trunc_order, unsigned bound,
                        unsigned max_terms, unsigned min_degree = 0);

private:
    std::mt19937_64 engine_;
};

/// Well-mixed per-item seed, so item k of seed s shares nothing with item
/// k+1 of seed s-1.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// A connection with a known flat frame: A_i = -(d_i G) G^-1, G(0) = I.
struct CorpusProblem {
    Connection connection;
    SeriesMatrix known_frame;
    std::uint64_t seed;
};

/// Flat frame by direct recursion on dm = -A m, one total degree at a
/// time, with m(0) = e_k. Shares no code with the projector. Throws
/// InconsistencyError if two variables prescribe different values for the
/// same coefficient.
FlatFrame solve_flat(const Connection& conn);

/// Inverse of a matrix with G(0) = I via the truncated geometric series
/// sum_s (I - G)^s. Throws DimensionError for non-square input and
/// std::invalid_argument if G(0) != I.
SeriesMatrix unipotent_inverse(const SeriesMatrix& g);

/// Gauge connection A_i = -(d_i G) G^-1 of a polynomial frame G with
/// G(0) = I. G is taken as an exact polynomial, so every A_i comes out at
/// full precision.
Connection gauge_connection(const SeriesMatrix& g);

/// G = I + N with N a sparse random polynomial matrix without constant
/// term; coefficients p/q with |p|, q <= coefficient_bound. Deterministic
/// in the seed on every platform.
CorpusProblem generate_problem(std::size_t n_vars, std::size_t rank, unsigned trunc_order, std::uint64_t seed,
                               unsigned coefficient_bound = 5);

} // namespace katz
