#include <gtest/gtest.h>

#include <cmath>

#include "colsafe/lqr.hpp"
#include "colsafe/problem.hpp"

using namespace colsafe;

namespace {

Point p2(double x, double y) {
    Point p(2);
    p << x, y;
    return p;
}

// Largest |h(a) − h(a')| / ‖a − a'‖ over all grid pairs and outputs.
double max_pairwise_slope(const Problem& p) {
    std::vector<Measurement> truth;
    for (const auto& a : p.grid.points()) truth.push_back(p.ground_truth(a));
    double worst = 0.0;
    for (Index a = 0; a < truth.size(); ++a)
        for (Index b = a + 1; b < truth.size(); ++b) {
            const double d = (p.grid.point(a) - p.grid.point(b)).norm();
            worst = std::max(worst, (truth[a] - truth[b]).cwiseAbs().maxCoeff() / d);
        }
    return worst;
}

}  // namespace

TEST(Synthetic2d, AnalyticValues) {
    const auto p = make_synthetic_2d();
    EXPECT_EQ(p.grid.size(), 441u);
    EXPECT_EQ(p.outputs(), 2u);
    const auto seed = p.grid.point(p.grid.safe_seed()[0]);
    EXPECT_NEAR(seed[0], 0.25, 1e-12);
    EXPECT_NEAR(seed[1], 0.25, 1e-12);
    const auto h = p.ground_truth(p2(0.75, 0.7));
    EXPECT_NEAR(h[0], 1.0, 1e-15);
    EXPECT_NEAR(h[1], 0.5 - std::hypot(0.35, 0.3), 1e-15);
    EXPECT_GE(p.ground_truth(seed)[1], 1e-3);
    EXPECT_EQ(p.true_violations(p2(1.0, 1.0)), 1u);
    EXPECT_EQ(p.true_violations(seed), 0u);
}

TEST(Synthetic2d, DeclaredLipschitzCoversTheGrid) {
    const auto p = make_synthetic_2d();
    EXPECT_LE(max_pairwise_slope(p), p.lipschitz + 1e-12);
}

TEST(Problem, EvaluateIsAPureFunctionOfPointAndSeed) {
    const auto p = make_synthetic_2d(0.05);
    const auto a = p.grid.point(7);
    EXPECT_EQ(p.evaluate(a, 5), p.evaluate(a, 5));
    EXPECT_NE(p.evaluate(a, 5), p.evaluate(a, 6));
    EXPECT_THROW(p.evaluate(p2(0.333, 0.1), 1), std::domain_error);
    EXPECT_THROW(p.ground_truth(p2(2.0, 0.0)), std::domain_error);
}

TEST(Problem, NoiseHasTheConfiguredMeanAndScale) {
    const double sigma = 0.2;
    const auto p = make_synthetic_2d(sigma);
    const auto a = p.grid.point(100);
    const auto truth = p.ground_truth(a);
    const int n = 20000;
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(2), sq = Eigen::VectorXd::Zero(2);
    for (int s = 0; s < n; ++s) {
        const Eigen::VectorXd e = p.evaluate(a, std::uint64_t(s)) - truth;
        sum += e;
        sq += e.cwiseProduct(e);
    }
    for (int i = 0; i < 2; ++i) {
        EXPECT_LE(std::abs(sum[i] / n), 4.0 * sigma / std::sqrt(double(n)));
        EXPECT_NEAR(std::sqrt(sq[i] / n), sigma, 0.05 * sigma);
    }
}

TEST(MakeProblem, KnownNamesOnly) {
    EXPECT_EQ(make_problem("synthetic-2d", 0.01, 11).grid.size(), 121u);
    EXPECT_THROW(make_problem("cartpole", 0.01, 11), std::invalid_argument);
}

TEST(Dlqr, ScalarRiccatiFixedPoint) {
    Eigen::MatrixXd one = Eigen::MatrixXd::Identity(1, 1);
    const auto K = dlqr(one, one, one, one);
    ASSERT_TRUE(K.has_value());
    const double P = (1.0 + std::sqrt(5.0)) / 2.0;
    EXPECT_NEAR((*K)(0, 0), P / (1.0 + P), 1e-9);
}

TEST(Dlqr, GainStabilizesTheDesignModel) {
    Eigen::MatrixXd A(2, 2), B(2, 1), Q(2, 2), R(1, 1);
    A << 1, 0.05, 0, 1;
    B << 0.00125, 0.05;
    Q << 10, 0, 0, 1;
    R << 0.1;
    const auto K = dlqr(A, B, Q, R);
    ASSERT_TRUE(K.has_value());
    const Eigen::MatrixXd closed = A - B * *K;
    EXPECT_LT(closed.eigenvalues().cwiseAbs().maxCoeff(), 1.0);
}

TEST(LqrProblem, GridSeedAndLipschitz) {
    const auto p = make_lqr_problem();
    EXPECT_GT(p.grid.size(), 1600u);
    EXPECT_EQ(p.outputs(), 2u);
    EXPECT_DOUBLE_EQ(p.lipschitz, 1.75);
    const auto seed = p.grid.safe_seed()[0];
    EXPECT_GE(p.ground_truth(p.grid.point(seed))[1], 1e-3);
    EXPECT_LE(max_pairwise_slope(p), p.lipschitz);

    // Both constraint signs occur, and the safe optimum is not the seed.
    Index unsafe = 0;
    double best_safe = -kInf;
    for (const auto& a : p.grid.points()) {
        const auto h = p.ground_truth(a);
        if (h[1] < 0.0) ++unsafe;
        else best_safe = std::max(best_safe, h[0]);
    }
    EXPECT_GT(unsafe, 0u);
    EXPECT_LT(unsafe, p.grid.size());
    EXPECT_GT(best_safe, p.ground_truth(p.grid.point(seed))[0] + 0.05);
}

TEST(LqrProblem, RolloutIsDeterministicAndFinite) {
    LqrPlant plant;
    const auto r = lqr_rollout(plant, p2(0.5, 0.5));
    ASSERT_TRUE(r.has_value());
    EXPECT_TRUE(std::isfinite(r->cost));
    EXPECT_GT(r->peak_speed, 0.0);
    EXPECT_EQ(r->cost, lqr_rollout(plant, p2(0.5, 0.5))->cost);
}
