#include <gtest/gtest.h>

#include "katz/cartier.hpp"
#include "katz/limits.hpp"
#include "katz/oracle.hpp"
#include "test_support.hpp"

using namespace katz;
using katz::test::M;
using katz::test::S;
using katz::test::V;

TEST(RestrictConnection, Examples)
{
    const auto lower = restrict_connection(Connection::trivial(2, 2, 3));
    EXPECT_EQ(lower.n_vars(), 1u);
    EXPECT_TRUE(lower.coeff(0).is_zero());
    EXPECT_THROW(restrict_connection(Connection::trivial(1, 2, 3)), DimensionError);
}

TEST(RestrictConnection, NonIntegrableNeverReachesRestriction)
{
    EXPECT_THROW(Connection({M({"x2", "0", "0", "0"}, 2, 3), SeriesMatrix::zero(2, 2, 2, 3)}), IntegrabilityError);
}

TEST(RestrictConnection, GaugeCommutesWithRestriction)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto problem = generate_problem(2, 2, 4, seed);
        const auto restricted = restrict_connection(problem.connection);
        const auto direct = gauge_connection(restrict_last(problem.known_frame));
        EXPECT_TRUE(restricted.coeff(0) == direct.coeff(0));
    }
}

TEST(RestrictVector, Examples)
{
    EXPECT_EQ(restrict_vector(V({"1 + x2", "x1*x2"}, 2, 3)), V({"1", "0"}, 1, 3));
    const auto a = V({"1 + x2 + x1", "x1*x2 - 4"}, 2, 3);
    const auto b = V({"x2^2", "x1^3 + 2*x2"}, 2, 3);
    EXPECT_EQ(restrict_vector(a + b), restrict_vector(a) + restrict_vector(b));
    EXPECT_THROW(restrict_vector(V({"1"}, 1, 3)), DimensionError);

    CorpusRng rng(4);
    for (int t = 0; t < 10; ++t) {
        const auto f = rng.series(3, 4, 5, 5);
        const auto m = rng.vector(2, 3, 4, 5, 5);
        EXPECT_EQ(restrict_vector(f * m), restrict_last(f) * restrict_vector(m));
    }
}

TEST(Compatibility, Examples)
{
    EXPECT_TRUE(compatibility_check(Connection::trivial(2, 2, 3), V({"1 + x1 + x2", "x2 - 5"}, 2, 3)));

    const auto problem = generate_problem(3, 2, 4, 77);
    CorpusRng rng(77);
    EXPECT_TRUE(compatibility_check(problem.connection, rng.vector(2, 3, 4, 5, 5)));

    const auto m = V({"x3", "0"}, 3, 4);
    EXPECT_TRUE(restrict_vector(project(problem.connection, m)).is_zero());
    EXPECT_TRUE(compatibility_check(problem.connection, m));
}

TEST(Tower, LevelsAndFrames)
{
    const auto problem = generate_problem(3, 2, 3, 5);
    const auto tower = build_tower(problem.connection);
    ASSERT_EQ(tower.size(), 3u);
    EXPECT_EQ(tower[0].level, 3u);
    EXPECT_EQ(tower[2].level, 1u);
    EXPECT_EQ(tower[2].connection.n_vars(), 1u);

    CorpusRng rng(5);
    const auto squares = tower_compatibility(problem.connection, rng.vector(2, 3, 3, 5, 4));
    ASSERT_EQ(squares.size(), 2u);
    for (const auto& s : squares) {
        EXPECT_TRUE(s.commutes) << "level " << s.level;
    }

    // Flat frames restrict to flat frames.
    for (std::size_t level = 0; level + 1 < tower.size(); ++level) {
        const auto frame = flat_basis(tower[level].connection);
        for (const auto& b : frame.sections()) {
            EXPECT_TRUE(is_flat(tower[level + 1].connection, restrict_vector(b)));
        }
    }
}
