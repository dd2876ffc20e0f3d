#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <set>

#include "colsafe/domain_grid.hpp"
#include "colsafe/parallel.hpp"
#include "colsafe/rng.hpp"

using namespace colsafe;

TEST(DeriveSeed, StreamsAndCountersAreDistinct) {
    std::set<std::uint64_t> seen;
    for (auto s : {Stream::ProblemNoise, Stream::Concentration, Stream::Repeat, Stream::Dataset})
        for (std::uint64_t k = 0; k < 1000; ++k) seen.insert(derive_seed(42, s, k));
    EXPECT_EQ(seen.size(), 4000u);
    EXPECT_EQ(derive_seed(1, Stream::Repeat, 3), derive_seed(1, Stream::Repeat, 3));
    EXPECT_NE(derive_seed(1, Stream::Repeat, 3), derive_seed(2, Stream::Repeat, 3));
    auto e1 = make_engine(5, Stream::Dataset, 9), e2 = make_engine(5, Stream::Dataset, 9);
    EXPECT_EQ(e1(), e2());
}

TEST(ParallelFor, VisitsEveryIndexOnceForAnyThreadCount) {
    for (Index threads : {1, 2, 3, 8}) {
        std::vector<std::atomic<int>> hits(101);
        parallel_for(hits.size(), [&](Index k) { ++hits[k]; }, threads);
        for (auto& h : hits) EXPECT_EQ(h.load(), 1);
    }
    parallel_for(0, [](Index) { FAIL(); }, 4);
}

TEST(ThreadCap, EnvironmentVariableCaps) {
    ::setenv("COLSAFE_THREADS", "1", 1);
    EXPECT_EQ(thread_cap(), 1u);
    ::unsetenv("COLSAFE_THREADS");
    EXPECT_GE(thread_cap(), 1u);
}

TEST(DomainGrid, LatticeIsRowMajor) {
    Point seed(2);
    seed << 0.0, 0.5;
    const auto g = DomainGrid::lattice({{0, 1, 3}, {0, 1, 3}}, {seed});
    ASSERT_EQ(g.size(), 9u);
    EXPECT_DOUBLE_EQ(g.point(1)[0], 0.0);
    EXPECT_DOUBLE_EQ(g.point(1)[1], 0.5);
    EXPECT_DOUBLE_EQ(g.point(3)[0], 0.5);
    EXPECT_EQ(g.safe_seed(), IndexSet{1});
    EXPECT_TRUE(g.is_seed(1));
    EXPECT_FALSE(g.is_seed(0));
    EXPECT_EQ(g.find(g.point(7)), Index(7));
    Point off(2);
    off << 0.25, 0.25;
    EXPECT_FALSE(g.find(off).has_value());
}

TEST(DomainGrid, RejectsInvalidInput) {
    Point a(1), b(1);
    a << 0.0;
    b << 1.0;
    EXPECT_THROW(DomainGrid({a, b}, {}), std::domain_error);
    EXPECT_THROW(DomainGrid({a, a}, {0}), std::domain_error);
    EXPECT_THROW(DomainGrid({a, b}, {2}), std::domain_error);
    Point off(1);
    off << 0.3;
    EXPECT_THROW(DomainGrid::lattice({{0, 1, 3}}, {off}), std::domain_error);
}
