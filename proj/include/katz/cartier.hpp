#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "katz/connection.hpp"

namespace katz {

/// A basis of flat sections b_1..b_r at precision d together with the
/// rational matrix of their constant terms (column k is b_k(0)).
///
/// Invariants: D_i b_k = 0 at precision d-1 for all i, k, and the constant
/// matrix is invertible. The constructor checks both.
class FlatFrame {
public:
    FlatFrame(Connection connection, std::vector<ModuleVector> sections);

    const Connection& connection() const noexcept { return connection_; }
    const std::vector<ModuleVector>& sections() const noexcept { return sections_; }
    const RationalMatrix& constant_matrix() const noexcept { return constant_; }
    const RationalMatrix& constant_inverse() const noexcept { return constant_inv_; }

private:
    Connection connection_;
    std::vector<ModuleVector> sections_;
    RationalMatrix constant_;
    RationalMatrix constant_inv_;
};

/// Witness that sum_k f_k m_k != 0: applying D^(J) and then the projector
/// leaves sum_k g_k(0) m_k with g_k(0) = witness_values[k], and
/// witness_values[nonzero_position] != 0. nonzero_position is 0-based.
struct IndependenceCertificate {
    std::size_t level;
    MultiIndex multi_index;
    std::vector<Rational> witness_values;
    std::size_t nonzero_position;
};

/// The projector onto flat sections,
///
///     P m = sum_{|J| <= d} (-1)^|J| x^J D^(J) m,
///
/// summed over every multi-index with |J| <= d (higher terms vanish
/// modulo m^(d+1) because of the x^J factor). The precision |J| lost by
/// D^(J) is restored by the exact factor x^J, so the result keeps the
/// precision of the input. Requires m at full precision d.
ModuleVector project(const Connection& conn, const ModuleVector& m);

/// Same sum for input of any precision p; the result has precision p.
ModuleVector project_truncated(const Connection& conn, const ModuleVector& m);

/// project(f m) == f(0) project(m), exactly.
bool project_scalar_rule_check(const Connection& conn, const TruncatedSeries& f, const ModuleVector& m);

/// project(project(m)) == project(m), exactly.
bool idempotence_check(const Connection& conn, const ModuleVector& m);

/// (project(m) == 0) exactly when every entry of m has zero constant term.
bool kernel_check(const Connection& conn, const ModuleVector& m);

/// b_k = project(e_k). Since P m = m mod m, the constant matrix is the
/// identity. Throws InconsistencyError if some b_k fails to be flat.
FlatFrame flat_basis(const Connection& conn);

/// Coefficients g with m = sum_k g_k b_k at precision d, solved degree by
/// degree against the inverse constant matrix.
std::vector<TruncatedSeries> nakayama_expand(const FlatFrame& frame, const ModuleVector& m);

/// sum_k g_k b_k.
ModuleVector recombine(const FlatFrame& frame, std::span<const TruncatedSeries> coeffs);

/// Matrix G whose columns are the flat basis: d_i G + A_i G = 0 at
/// precision d-1 and G(0) = I. Realizes M^flat (x)_k R -> M.
SeriesMatrix trivialize(const Connection& conn);

/// Certify sum_k f_k m_k != 0 for flat m_k with linearly independent
/// constant terms and f not all zero. J is the first multi-index in
/// GradedOrder at which some f_k has a nonzero coefficient. The combination
/// is differentiated by D^(J), projected, and the result is checked
/// against sum_k g_k(0) m_k.
///
/// Throws std::invalid_argument if every f_k is zero ("nothing to
/// certify") or the preconditions on m fail.
IndependenceCertificate independence_certificate(const Connection& conn, std::span<const ModuleVector> flat_vectors,
                                                 std::span<const TruncatedSeries> coeffs);

} // namespace katz
