#include <gtest/gtest.h>

#include "katz/oracle.hpp"
#include "test_support.hpp"

using namespace katz;
using katz::test::M;
using katz::test::S;
using katz::test::V;

TEST(SolveFlat, Examples)
{
    const auto trivial = solve_flat(Connection::trivial(2, 2, 3));
    EXPECT_EQ(trivial.sections()[0], ModuleVector::basis(2, 0, 2, 3));
    EXPECT_EQ(trivial.sections()[1], ModuleVector::basis(2, 1, 2, 3));

    // Two recursion steps: c1 = -c0 = -1, c2 = -c1/2 = 1/2.
    const auto exp_frame = solve_flat(test::exponential(2));
    EXPECT_TRUE(exp_frame.sections()[0][0].identical(S("1 - x1 + 1/2*x1^2", 1, 2)));

    const auto nil = solve_flat(test::nilpotent(3));
    EXPECT_EQ(nil.sections()[0], V({"1", "0"}, 1, 3));
    EXPECT_EQ(nil.sections()[1], V({"-x1", "1"}, 1, 3));
}

TEST(GaugeConnection, HandComputedRankOne)
{
    // G = 1 + x1, G^-1 = 1 - x1 + x1^2 at d = 2, A_1 = -(1) G^-1.
    const auto conn = gauge_connection(M({"1 + x1"}, 1, 2));
    EXPECT_TRUE(conn.coeff(0)(0, 0).identical(S("-1 + x1 - x1^2", 1, 2)));
}

TEST(GaugeConnection, ZeroPerturbationIsTrivial)
{
    const auto conn = gauge_connection(SeriesMatrix::identity(2, 3, 4));
    for (const auto& a : conn.coeffs()) {
        EXPECT_TRUE(a.is_zero());
    }
}

TEST(UnipotentInverse, InvertsAndRejects)
{
    const auto g = M({"1 + x1", "x2", "1/2*x1*x2", "1 - x2^2"}, 2, 4);
    const auto inv = unipotent_inverse(g);
    EXPECT_TRUE(g * inv == SeriesMatrix::identity(2, 2, 4));
    EXPECT_TRUE(inv * g == SeriesMatrix::identity(2, 2, 4));
    EXPECT_THROW(unipotent_inverse(M({"2 + x1"}, 1, 3)), std::invalid_argument);
}

TEST(GenerateProblem, Deterministic)
{
    const auto a = generate_problem(2, 2, 4, 42);
    const auto b = generate_problem(2, 2, 4, 42);
    EXPECT_TRUE(a.known_frame == b.known_frame);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_TRUE(a.connection.coeff(i) == b.connection.coeff(i));
    }
    const auto c = generate_problem(2, 2, 4, 43);
    EXPECT_FALSE(a.known_frame == c.known_frame && a.connection.coeff(0) == c.connection.coeff(0));
    EXPECT_THROW(generate_problem(0, 2, 4, 1), DimensionError);
}

TEST(GenerateProblem, CoefficientBound)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto p = generate_problem(2, 2, 4, seed, 3);
        EXPECT_EQ(p.known_frame.constant_matrix(), RationalMatrix::identity(2));
        for (const auto& e : p.known_frame.entries()) {
            EXPECT_LE(e.terms().size(), 3u);
            for (const auto& [j, c] : e.terms()) {
                if (j.is_zero()) {
                    continue;
                }
                // Two draws a/b + c/e may share a monomial: |num| <= 2*3*3, den <= 3*3.
                EXPECT_LE(abs(c.get_num()), 18);
                EXPECT_LE(c.get_den(), 9);
            }
        }
    }
}

class OracleProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(OracleProperties, KnownFrameIsRecovered)
{
    const auto seed = GetParam();
    const std::size_t n = 1 + seed % 3;
    const std::size_t r = 1 + (seed / 3) % 3;
    const unsigned d = 2 + static_cast<unsigned>(seed % 4);
    const auto problem = generate_problem(n, r, d, seed);
    const auto& conn = problem.connection;
    const auto& g = problem.known_frame;

    // A_i = -(d_i G) G^-1 at precision d-1, i.e. d_i G + A_i G = 0.
    for (std::size_t i = 0; i < n; ++i) {
        EXPECT_TRUE((partial(i, g) + conn.coeff(i) * g).is_zero());
    }
    for (std::size_t k = 0; k < r; ++k) {
        EXPECT_TRUE(is_flat(conn, g.column(k)));
    }
    const auto frame = solve_flat(conn);
    EXPECT_TRUE(SeriesMatrix::from_columns(frame.sections()) == g);
}

INSTANTIATE_TEST_SUITE_P(Seeds, OracleProperties, ::testing::Range<std::uint64_t>(0, 36));
