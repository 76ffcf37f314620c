#include "katz/cartier.hpp"

#include <stdexcept>

namespace katz {

FlatFrame::FlatFrame(Connection connection, std::vector<ModuleVector> sections)
    : connection_(std::move(connection)), sections_(std::move(sections))
{
    const std::size_t r = connection_.rank();
    if (sections_.size() != r) {
        throw DimensionError("flat frame needs " + std::to_string(r) + " sections, got " +
                             std::to_string(sections_.size()));
    }
    for (std::size_t k = 0; k < r; ++k) {
        const ModuleVector& b = sections_[k];
        if (b.rank() != r || b.n_vars() != connection_.n_vars() || b.trunc_order() != connection_.trunc_order()) {
            throw DimensionError("flat frame section " + std::to_string(k + 1) + " has the wrong shape");
        }
        if (b.precision() != connection_.trunc_order()) {
            throw PrecisionError("flat frame section " + std::to_string(k + 1) + " is not at full precision");
        }
        if (!is_flat(connection_, b)) {
            throw InconsistencyError("flat frame section " + std::to_string(k + 1) + " is not flat");
        }
    }
    constant_ = SeriesMatrix::from_columns(sections_).constant_matrix();
    auto inv = constant_.inverse();
    if (!inv) {
        throw InconsistencyError("flat frame constant matrix is singular");
    }
    constant_inv_ = std::move(*inv);
}

namespace {

// Walks every J with |J| <= budget, sharing the prefix D_1^(j_1)...D_{i}^(j_i) m
// between siblings; each multi-index costs one application of some D_i.
void accumulate_projector(const Connection& conn, std::size_t i, const ModuleVector& v, unsigned budget,
                          const MultiIndex& J, std::vector<TruncatedSeries>& acc)
{
    if (i == conn.n_vars()) {
        const Rational sign = J.degree() % 2 == 0 ? 1 : -1;
        for (std::size_t k = 0; k < acc.size(); ++k) {
            acc[k] = acc[k] + shift(J, v[k], sign);
        }
        return;
    }
    ModuleVector w = v;
    for (unsigned j = 0; j <= budget; ++j) {
        if (j > 0) {
            // D_i^(j) = (1/j) D_i D_i^(j-1)
            w = Rational(1, j) * apply_D(conn, i, w);
        }
        accumulate_projector(conn, i + 1, w, budget - j, J.with(i, j), acc);
    }
}

} // namespace

ModuleVector project_truncated(const Connection& conn, const ModuleVector& m)
{
    if (m.rank() != conn.rank() || m.n_vars() != conn.n_vars() || m.trunc_order() != conn.trunc_order()) {
        throw DimensionError("vector shape does not match the connection");
    }
    const unsigned p = m.precision();
    std::vector<TruncatedSeries> acc(m.rank(), TruncatedSeries(m.n_vars(), m.trunc_order(), p));
    accumulate_projector(conn, 0, m, p, MultiIndex(conn.n_vars()), acc);
    return ModuleVector(std::move(acc));
}

ModuleVector project(const Connection& conn, const ModuleVector& m)
{
    if (m.precision() < conn.trunc_order()) {
        throw PrecisionError("projector needs full precision " + std::to_string(conn.trunc_order()) + ", got " +
                             std::to_string(m.precision()));
    }
    return project_truncated(conn, m);
}

bool project_scalar_rule_check(const Connection& conn, const TruncatedSeries& f, const ModuleVector& m)
{
    const ModuleVector lhs = project(conn, f * m);
    const ModuleVector rhs = eval_at_zero(f) * project(conn, m);
    return lhs.precision() == conn.trunc_order() && lhs == rhs;
}

bool idempotence_check(const Connection& conn, const ModuleVector& m)
{
    const ModuleVector pm = project(conn, m);
    return project(conn, pm) == pm;
}

bool kernel_check(const Connection& conn, const ModuleVector& m)
{
    const bool in_maximal_ideal = [&] {
        for (const auto& c : m.constant_term()) {
            if (c != 0) {
                return false;
            }
        }
        return true;
    }();
    return project(conn, m).is_zero() == in_maximal_ideal;
}

FlatFrame flat_basis(const Connection& conn)
{
    std::vector<ModuleVector> sections;
    sections.reserve(conn.rank());
    for (std::size_t k = 0; k < conn.rank(); ++k) {
        ModuleVector b = project(conn, ModuleVector::basis(conn.rank(), k, conn.n_vars(), conn.trunc_order()));
        if (!is_flat(conn, b)) {
            throw InconsistencyError("projected basis vector e" + std::to_string(k + 1) + " is not flat");
        }
        sections.push_back(std::move(b));
    }
    FlatFrame frame(conn, std::move(sections));
    if (!(frame.constant_matrix() == RationalMatrix::identity(conn.rank()))) {
        throw InconsistencyError("projector did not preserve constant terms of the standard basis");
    }
    return frame;
}

ModuleVector recombine(const FlatFrame& frame, std::span<const TruncatedSeries> coeffs)
{
    const auto& b = frame.sections();
    if (coeffs.size() != b.size()) {
        throw DimensionError("expected " + std::to_string(b.size()) + " coefficients");
    }
    ModuleVector sum = ModuleVector::zero(b.front().rank(), b.front().n_vars(), b.front().trunc_order());
    for (std::size_t k = 0; k < b.size(); ++k) {
        sum = sum + coeffs[k] * b[k];
    }
    return sum;
}

std::vector<TruncatedSeries> nakayama_expand(const FlatFrame& frame, const ModuleVector& m)
{
    const Connection& conn = frame.connection();
    if (m.rank() != conn.rank() || m.n_vars() != conn.n_vars() || m.trunc_order() != conn.trunc_order()) {
        throw DimensionError("vector shape does not match the frame");
    }
    const std::size_t r = conn.rank();
    const unsigned d = conn.trunc_order();
    std::vector<TruncatedSeries> g(r, TruncatedSeries(conn.n_vars(), d, m.precision()));
    // After step s the residual m - sum g_k b_k vanishes through degree s.
    for (unsigned s = 0; s <= m.precision(); ++s) {
        const ModuleVector residual = m - recombine(frame, g);
        std::vector<TruncatedSeries> layer;
        layer.reserve(r);
        for (const auto& e : residual.entries()) {
            layer.push_back(e.homogeneous_part(s));
        }
        for (std::size_t k = 0; k < r; ++k) {
            for (std::size_t c = 0; c < r; ++c) {
                const Rational& w = frame.constant_inverse()(k, c);
                if (w != 0 && !layer[c].is_zero()) {
                    g[k] = g[k] + w * layer[c];
                }
            }
        }
    }
    return g;
}

SeriesMatrix trivialize(const Connection& conn)
{
    const FlatFrame frame = flat_basis(conn);
    return SeriesMatrix::from_columns(frame.sections());
}

IndependenceCertificate independence_certificate(const Connection& conn, std::span<const ModuleVector> flat_vectors,
                                                 std::span<const TruncatedSeries> coeffs)
{
    if (flat_vectors.empty() || flat_vectors.size() != coeffs.size()) {
        throw std::invalid_argument("need matching, non-empty lists of flat vectors and coefficients");
    }
    const std::size_t l = flat_vectors.size();
    RationalMatrix constants(conn.rank(), l);
    for (std::size_t k = 0; k < l; ++k) {
        const ModuleVector& mk = flat_vectors[k];
        if (mk.rank() != conn.rank() || mk.n_vars() != conn.n_vars() || mk.trunc_order() != conn.trunc_order()) {
            throw DimensionError("vector shape does not match the connection");
        }
        if (!is_flat(conn, mk)) {
            throw std::invalid_argument("vector " + std::to_string(k + 1) + " is not flat");
        }
        const auto c = mk.constant_term();
        for (std::size_t row = 0; row < c.size(); ++row) {
            constants(row, k) = c[row];
        }
    }
    if (constants.rank() != l) {
        throw std::invalid_argument("constant terms of the flat vectors are linearly dependent");
    }

    // Smallest monomial carrying a nonzero coefficient of some f_k.
    const MultiIndex* best = nullptr;
    for (const auto& f : coeffs) {
        if (f.n_vars() != conn.n_vars() || f.trunc_order() != conn.trunc_order()) {
            throw DimensionError("coefficient shape does not match the connection");
        }
        if (!f.is_zero() && (best == nullptr || GradedOrder{}(f.terms().begin()->first, *best))) {
            best = &f.terms().begin()->first;
        }
    }
    if (best == nullptr) {
        throw std::invalid_argument("nothing to certify: all coefficients are zero");
    }
    const MultiIndex J = *best;

    IndependenceCertificate cert{conn.n_vars(), J, {}, l};
    cert.witness_values.reserve(l);
    for (std::size_t k = 0; k < l; ++k) {
        cert.witness_values.push_back(coeffs[k].coefficient(J));
        if (cert.nonzero_position == l && cert.witness_values.back() != 0) {
            cert.nonzero_position = k;
        }
    }

    ModuleVector combo = ModuleVector::zero(conn.rank(), conn.n_vars(), conn.trunc_order());
    ModuleVector expected = combo;
    for (std::size_t k = 0; k < l; ++k) {
        combo = combo + coeffs[k] * flat_vectors[k];
        expected = expected + cert.witness_values[k] * flat_vectors[k];
    }
    const ModuleVector projected = project_truncated(conn, apply_DJ(conn, J, combo));
    if (!(projected == expected)) {
        throw InconsistencyError("projected derivative disagrees with the witness combination");
    }
    bool nonzero = false;
    for (const auto& c : projected.constant_term()) {
        nonzero = nonzero || c != 0;
    }
    if (!nonzero) {
        throw InconsistencyError("witness combination vanished");
    }
    return cert;
}

} // namespace katz
