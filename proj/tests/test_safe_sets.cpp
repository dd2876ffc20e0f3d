#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "colsafe/safe_sets.hpp"
#include "oracles.hpp"

using namespace colsafe;

namespace {

DomainGrid line_grid(std::vector<double> xs, IndexSet seed) {
    std::vector<Point> pts;
    for (double x : xs) {
        Point p(1);
        p << x;
        pts.push_back(p);
    }
    return DomainGrid(std::move(pts), std::move(seed));
}

DomainGrid unit_lattice(Index res, std::vector<Point> seed) {
    return DomainGrid::lattice({{0, 1, res}, {0, 1, res}}, seed);
}

Point p2(double x, double y) {
    Point p(2);
    p << x, y;
    return p;
}

IntervalTable table(Index points, Index outputs, double lo, double hi) {
    IntervalTable t;
    t.lower = Eigen::MatrixXd::Constant(Eigen::Index(points), Eigen::Index(outputs), lo);
    t.upper = Eigen::MatrixXd::Constant(Eigen::Index(points), Eigen::Index(outputs), hi);
    return t;
}

}  // namespace

TEST(BoundState, InitialContainedSets) {
    auto grid = line_grid({0.0, 0.5, 1.0}, {1});
    BoundState b(grid, 3);
    for (Index a = 0; a < 3; ++a) {
        EXPECT_EQ(b.l(a, 0), -kInf);
        EXPECT_EQ(b.u(a, 0), kInf);
        for (Index i = 1; i < 3; ++i) {
            EXPECT_EQ(b.l(a, i), a == 1 ? 0.0 : -kInf);
            EXPECT_EQ(b.u(a, i), kInf);
        }
    }
    EXPECT_TRUE(std::isinf(b.max_width(1)));
}

TEST(UpdateBounds, SeedIntervalIntersection) {
    auto grid = line_grid({0.0, 1.0}, {0});
    BoundState b(grid, 2);
    update_bounds(b, table(2, 2, 0.3, 0.7));
    EXPECT_DOUBLE_EQ(b.l(0, 1), 0.3);
    EXPECT_DOUBLE_EQ(b.u(0, 1), 0.7);
    // Wider interval leaves the contained set unchanged.
    update_bounds(b, table(2, 2, -1.0, 2.0));
    EXPECT_DOUBLE_EQ(b.l(0, 1), 0.3);
    EXPECT_DOUBLE_EQ(b.u(0, 1), 0.7);
    EXPECT_EQ(b.intersection_violations, 0u);
}

TEST(UpdateBounds, SeedLowerBoundNeverDropsBelowZero) {
    auto grid = line_grid({0.0}, {0});
    BoundState b(grid, 2);
    update_bounds(b, table(1, 2, -0.4, 0.6));
    EXPECT_DOUBLE_EQ(b.l(0, 1), 0.0);
    EXPECT_DOUBLE_EQ(b.l(0, 0), -0.4);
}

TEST(UpdateBounds, NoDataKeepsPrior) {
    auto grid = line_grid({0.0, 1.0}, {0});
    BoundState b(grid, 2);
    update_bounds(b, table(2, 2, -kInf, kInf));
    EXPECT_EQ(b.l(1, 1), -kInf);
    EXPECT_EQ(b.u(1, 0), kInf);
    EXPECT_DOUBLE_EQ(b.l(0, 1), 0.0);
}

TEST(UpdateBounds, EmptyIntersectionIsKeptAndCounted) {
    auto grid = line_grid({0.0, 1.0}, {0});
    BoundState b(grid, 2);
    update_bounds(b, table(2, 2, 1.0, 2.0));
    update_bounds(b, table(2, 2, 3.0, 4.0));
    EXPECT_EQ(b.intersection_violations, 4u);
    EXPECT_DOUBLE_EQ(b.l(1, 0), 1.0);
    EXPECT_DOUBLE_EQ(b.u(1, 0), 2.0);
}

TEST(SafeSet, UninformativeBoundsGiveTheSeed) {
    auto grid = unit_lattice(11, {p2(0.5, 0.5)});
    BoundState b(grid, 3);
    EXPECT_EQ(update_safe_set(grid.safe_seed(), b, grid, 1.75), grid.safe_seed());
}

TEST(SafeSet, SeedCertifiesBallOfRadiusLowerOverL) {
    auto grid = unit_lattice(21, {p2(0.0, 0.0)});
    BoundState b(grid, 2);
    b.l(0, 1) = 1.0;
    const auto safe = update_safe_set(grid.safe_seed(), b, grid, 1.75);
    IndexSet want;
    for (Index a = 0; a < grid.size(); ++a)
        if (grid.point(a).norm() <= 1.0 / 1.75) want.push_back(a);
    EXPECT_EQ(safe, want);
    EXPECT_GT(safe.size(), 1u);
}

TEST(SafeSet, EveryConstraintMustBeCertified) {
    auto grid = line_grid({0.0, 0.1, 0.2, 0.3}, {0});
    BoundState b(grid, 3);
    b.l(0, 1) = 0.25;  // reaches 0.25
    b.l(0, 2) = 0.12;  // reaches 0.12
    EXPECT_EQ(update_safe_set({0}, b, grid, 1.0), (IndexSet{0, 1}));
}

TEST(SafeSet, FullGridIsAFixedPoint) {
    auto grid = unit_lattice(5, {p2(0, 0)});
    BoundState b(grid, 2);
    b.l.setConstant(0.0);
    IndexSet all(grid.size());
    for (Index a = 0; a < all.size(); ++a) all[a] = a;
    EXPECT_EQ(update_safe_set(all, b, grid, 1.0), all);
    const auto ex = compute_expanders(all, b, grid, 1.0);
    EXPECT_TRUE(ex.expanders.empty());
}

TEST(SafeSet, NoConstraintsMeansEverythingIsSafe) {
    auto grid = unit_lattice(4, {p2(0, 0)});
    BoundState b(grid, 1);
    EXPECT_EQ(update_safe_set(grid.safe_seed(), b, grid, 1.0).size(), grid.size());
}

TEST(Maximizers, HandExample) {
    auto grid = line_grid({0.0, 1.0, 2.0}, {0});
    BoundState b(grid, 2);
    b.l.col(0) << 0.0, 0.5, 1.5;
    b.u.col(0) << 1.0, 2.0, 1.6;
    EXPECT_EQ(compute_maximizers({0, 1, 2}, b), (IndexSet{1, 2}));
}

TEST(Maximizers, IdenticalIntervalsKeepEverything) {
    auto grid = line_grid({0.0, 1.0, 2.0}, {0});
    BoundState b(grid, 2);
    b.l.col(0).setConstant(0.2);
    b.u.col(0).setConstant(0.4);
    EXPECT_EQ(compute_maximizers({0, 1, 2}, b), (IndexSet{0, 1, 2}));
}

TEST(Expanders, SeedReachesUnsafeNeighbour) {
    auto grid = line_grid({0.0, 0.5, 2.0}, {0});
    BoundState b(grid, 2);
    b.u(0, 1) = 2.0;
    const auto ex = compute_expanders({0}, b, grid, 1.75);
    EXPECT_EQ(ex.expanders, (IndexSet{0}));
    EXPECT_EQ(ex.counts[0], 1u);  // 0.5 reachable, 2.0 is not
}

TEST(Expanders, ZeroUpperBoundsExpandNothing) {
    auto grid = unit_lattice(6, {p2(0, 0)});
    BoundState b(grid, 3);
    b.u.setConstant(0.0);
    EXPECT_TRUE(compute_expanders({0, 1}, b, grid, 1.0).expanders.empty());
}

TEST(SelectNext, ArgmaxAndTieBreak) {
    auto grid = line_grid({0, 1, 2, 3}, {0});
    BoundState b(grid, 2);
    b.l.setConstant(0.0);
    b.u.setConstant(0.0);
    b.u(0, 0) = 1.0;
    b.u(1, 1) = 3.0;
    b.u(2, 0) = 2.0;
    EXPECT_EQ(select_next({0}, {}, b), Index(0));
    EXPECT_EQ(select_next({0, 2}, {1}, b), Index(1));
    b.u(2, 0) = 3.0;
    EXPECT_EQ(select_next({2}, {1}, b), Index(1));
    b.u(3, 1) = kInf;
    EXPECT_EQ(select_next({1, 2}, {3}, b), Index(3));
    EXPECT_FALSE(select_next({}, {}, b).has_value());
}

TEST(BestGuess, SmallestIndexAmongEqualLowerBounds) {
    auto grid = line_grid({0, 1, 2, 3}, {1, 2});
    BoundState b(grid, 2);
    EXPECT_EQ(best_guess({1, 2}, b), 1u);
    b.l.col(0) << 1, 1, 5, 1;
    EXPECT_EQ(best_guess({0, 1, 2, 3}, b), 2u);
}

// Random grids with random bounds compared against the direct triple loop.
TEST(SafeSetProperty, MatchesTripleLoopOracleOnRandomGrids) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
        const Index d = 1 + rng() % 3;
        const Index n = 5 + rng() % 196;
        const Index q = 1 + rng() % 3;
        std::vector<Point> pts;
        for (Index k = 0; k < n; ++k) {
            Point p(static_cast<Eigen::Index>(d));
            for (Index j = 0; j < d; ++j) p[Eigen::Index(j)] = std::round(U(rng) * 20) / 20 + 1e-7 * k;
            pts.push_back(p);
        }
        IndexSet seed{rng() % n};
        DomainGrid grid(pts, seed);
        BoundState b(grid, q + 1);
        for (Index a = 0; a < n; ++a)
            for (Index i = 0; i <= q; ++i) {
                const double r = U(rng);
                b.l(a, i) = r < 0.3 ? -kInf : U(rng) * 0.4 - 0.1;
                b.u(a, i) = r > 0.9 ? kInf : b.l(a, i) + U(rng) * 0.5;
                if (i > 0 && grid.is_seed(a)) b.l(a, i) = std::max(0.0, b.l(a, i));
            }
        const double L = 0.5 + 2.0 * U(rng);
        IndexSet prev = seed;
        for (int step = 0; step < 4; ++step) {
            const auto want = test_oracle::naive_safe_set(prev, b.l, grid, L);
            const auto got = update_safe_set(prev, b, grid, L);
            ASSERT_EQ(got, want);
            const auto ex = compute_expanders(got, b, grid, L);
            const auto counts = test_oracle::naive_expansion_counts(got, b.u, grid, L);
            ASSERT_EQ(ex.counts, counts);
            IndexSet want_ex;
            for (Index a : got)
                if (counts[a] > 0) want_ex.push_back(a);
            ASSERT_EQ(ex.expanders, want_ex);
            prev = got;
        }
    }
}
