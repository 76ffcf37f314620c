#include "katz/oracle.hpp"

#include <optional>
#include <stdexcept>

namespace katz {

FlatFrame solve_flat(const Connection& conn)
{
    const std::size_t n = conn.n_vars();
    const std::size_t r = conn.rank();
    const unsigned d = conn.trunc_order();
    std::vector<ModuleVector> sections;
    sections.reserve(r);

    for (std::size_t k = 0; k < r; ++k) {
        std::vector<TruncatedSeries::TermMap> terms(r);
        terms[k].emplace(MultiIndex(n), 1);

        for (unsigned s = 0; s < d; ++s) {
            // m known through degree s; A_i m is then known through degree s.
            std::vector<TruncatedSeries> known;
            known.reserve(r);
            for (std::size_t row = 0; row < r; ++row) {
                known.emplace_back(n, d, s, terms[row]);
            }
            const ModuleVector m(std::move(known));
            std::vector<ModuleVector> am;
            am.reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                am.push_back(conn.coeff(i).truncated(s) * m);
            }
            // Degree s+1 coefficients from d_i m = -A_i m; every i with
            // j_i > 0 must agree.
            for (const MultiIndex& J : monomials_of_degree(n, s + 1)) {
                for (std::size_t row = 0; row < r; ++row) {
                    std::optional<Rational> value;
                    for (std::size_t i = 0; i < n; ++i) {
                        if (J[i] == 0) {
                            continue;
                        }
                        Rational v = -am[i][row].coefficient(J.decremented(i)) / J[i];
                        if (!value) {
                            value = std::move(v);
                        } else if (*value != v) {
                            throw InconsistencyError("flat recursion is inconsistent at monomial " + J.to_string() +
                                                     ", row " + std::to_string(row + 1) + " (curvature leak)");
                        }
                    }
                    if (*value != 0) {
                        terms[row].emplace(J, std::move(*value));
                    }
                }
            }
        }

        std::vector<TruncatedSeries> entries;
        entries.reserve(r);
        for (std::size_t row = 0; row < r; ++row) {
            entries.emplace_back(n, d, d, std::move(terms[row]));
        }
        sections.emplace_back(std::move(entries));
    }
    return FlatFrame(conn, std::move(sections));
}

SeriesMatrix unipotent_inverse(const SeriesMatrix& g)
{
    if (g.rows() != g.cols()) {
        throw DimensionError("inverse of a non-square matrix");
    }
    if (!(g.constant_matrix() == RationalMatrix::identity(g.rows()))) {
        throw std::invalid_argument("unipotent_inverse needs G(0) = I");
    }
    const SeriesMatrix id = SeriesMatrix::identity(g.rows(), g.n_vars(), g.trunc_order()).truncated(g.precision());
    const SeriesMatrix nil = id - g;
    // nil has no constant term, so nil^s vanishes for s > precision.
    SeriesMatrix sum = id;
    SeriesMatrix power = id;
    for (unsigned s = 1; s <= g.precision(); ++s) {
        power = power * nil;
        if (power.is_zero()) {
            break;
        }
        sum = sum + power;
    }
    return sum;
}

Connection gauge_connection(const SeriesMatrix& g)
{
    const unsigned d = g.trunc_order();
    const SeriesMatrix inv = unipotent_inverse(g);
    std::vector<SeriesMatrix> coeffs;
    coeffs.reserve(g.n_vars());
    for (std::size_t i = 0; i < g.n_vars(); ++i) {
        const SeriesMatrix dg = partial(i, g);
        std::vector<TruncatedSeries> exact;
        exact.reserve(dg.entries().size());
        for (const auto& e : dg.entries()) {
            exact.push_back(e.assume_precision(d));
        }
        coeffs.push_back(-(SeriesMatrix(dg.rows(), dg.cols(), std::move(exact)) * inv));
    }
    return Connection(std::move(coeffs));
}

std::int64_t CorpusRng::between(std::int64_t lo, std::int64_t hi)
{
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

Rational CorpusRng::nonzero_rational(unsigned bound)
{
    const auto b = static_cast<std::int64_t>(bound);
    std::int64_t num = between(-b, b - 1);
    if (num >= 0) {
        ++num; // skip zero
    }
    const std::int64_t den = between(1, b);
    Rational c(static_cast<long>(num), static_cast<unsigned long>(den));
    c.canonicalize();
    return c;
}

MultiIndex CorpusRng::monomial(std::size_t n_vars, unsigned degree)
{
    MultiIndex J(n_vars);
    for (unsigned u = 0; u < degree; ++u) {
        J = J.incremented(static_cast<std::size_t>(below(n_vars)));
    }
    return J;
}

TruncatedSeries CorpusRng::series(std::size_t n_vars, unsigned trunc_order, unsigned bound, unsigned max_terms,
                                  unsigned min_degree)
{
    TruncatedSeries::TermMap t;
    const auto n_terms = between(0, max_terms);
    for (std::int64_t k = 0; k < n_terms; ++k) {
        const auto degree = static_cast<unsigned>(between(min_degree, trunc_order));
        t[monomial(n_vars, degree)] += nonzero_rational(bound);
    }
    return TruncatedSeries(n_vars, trunc_order, trunc_order, std::move(t));
}

ModuleVector CorpusRng::vector(std::size_t rank, std::size_t n_vars, unsigned trunc_order, unsigned bound,
                               unsigned max_terms, unsigned min_degree)
{
    std::vector<TruncatedSeries> e;
    e.reserve(rank);
    for (std::size_t k = 0; k < rank; ++k) {
        e.push_back(series(n_vars, trunc_order, bound, max_terms, min_degree));
    }
    return ModuleVector(std::move(e));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CorpusProblem generate_problem(std::size_t n_vars, std::size_t rank, unsigned trunc_order, std::uint64_t seed,
                               unsigned coefficient_bound)
{
    if (n_vars == 0 || rank == 0 || trunc_order == 0 || coefficient_bound == 0) {
        throw DimensionError("generate_problem needs n, r, d, bound >= 1");
    }
    CorpusRng rng(seed);
    std::vector<TruncatedSeries> entries;
    entries.reserve(rank * rank);
    for (std::size_t row = 0; row < rank; ++row) {
        for (std::size_t col = 0; col < rank; ++col) {
            TruncatedSeries entry = rng.series(n_vars, trunc_order, coefficient_bound, 2, 1);
            if (row == col) {
                entry = entry + TruncatedSeries::constant(n_vars, trunc_order, 1);
            }
            entries.push_back(std::move(entry));
        }
    }
    SeriesMatrix g(rank, rank, std::move(entries));
    return CorpusProblem{gauge_connection(g), std::move(g), seed};
}

} // namespace katz
