#include "colsafe/lqr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace colsafe {

std::optional<Eigen::MatrixXd> dlqr(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                                    const Eigen::MatrixXd& R, int max_iterations, double tolerance) {
    Eigen::MatrixXd P = Q;
    for (int it = 0; it < max_iterations; ++it) {
        const Eigen::MatrixXd BtP = B.transpose() * P;
        const Eigen::MatrixXd gain = (R + BtP * B).ldlt().solve(BtP * A);
        const Eigen::MatrixXd next = Q + A.transpose() * P * (A - B * gain);
        if (!next.allFinite()) return std::nullopt;
        const double change = (next - P).cwiseAbs().maxCoeff();
        P = 0.5 * (next + next.transpose());
        if (change <= tolerance * std::max(1.0, P.cwiseAbs().maxCoeff())) {
            const Eigen::MatrixXd BtPf = B.transpose() * P;
            return Eigen::MatrixXd((R + BtPf * B).ldlt().solve(BtPf * A));
        }
    }
    return std::nullopt;
}

std::optional<Rollout> lqr_rollout(const LqrPlant& plant, const Point& a) {
    if (a.size() != 2) throw std::domain_error("LQR problem is two-dimensional");
    const double dt = plant.dt;
    Eigen::Matrix2d A;
    A << 1.0, dt, 0.0, 1.0;
    Eigen::Vector2d B(0.5 * dt * dt, dt);

    const double q_exp = plant.q_exponent_lo + (plant.q_exponent_hi - plant.q_exponent_lo) * a[0];
    const double r_exp = plant.r_exponent_lo + (plant.r_exponent_hi - plant.r_exponent_lo) * a[1];
    Eigen::Matrix2d Q = Eigen::Matrix2d::Zero();
    Q(0, 0) = std::pow(10.0, q_exp);
    Q(1, 1) = 1.0;
    Eigen::MatrixXd R(1, 1);
    R(0, 0) = std::pow(10.0, r_exp);

    auto gain = dlqr(A, B, Q, R);
    if (!gain) return std::nullopt;
    const Eigen::RowVector2d K = gain->row(0);

    Eigen::Vector2d x(1.0, 0.0);
    double actuator = 0.0;
    Rollout out;
    for (int t = 0; t < plant.horizon; ++t) {
        const double command = -K.dot(x);
        actuator += dt / plant.actuator_lag * (command - actuator);
        out.cost += (x[0] * x[0] + 0.1 * x[1] * x[1]) * dt;
        x = A * x + plant.actuator_gain * B * actuator;
        out.peak_speed = std::max(out.peak_speed, std::abs(x[1]));
    }
    return out;
}

std::optional<Measurement> lqr_outputs(const LqrPlant& plant, const Point& a) {
    auto r = lqr_rollout(plant, a);
    if (!r) return std::nullopt;
    Measurement y(2);
    y[0] = plant.output_scale * std::max(-std::log(r->cost), plant.reward_floor);
    y[1] = plant.output_scale * (plant.speed_limit - std::min(r->peak_speed, plant.speed_limit + plant.speed_clip));
    return y;
}

Problem make_lqr_problem(double sigma, Index resolution) {
    if (resolution < 2) throw std::domain_error("LQR problem needs resolution >= 2");
    const LqrPlant plant;
    std::vector<AxisSpec> axes{{0.0, 1.0, resolution}, {0.0, 1.0, resolution}};
    const auto full = DomainGrid::lattice(axes, {Point::Zero(2)});

    // Weight pairs whose synthesis fails are dropped from the domain.
    std::vector<Point> points;
    for (const auto& p : full.points()) {
        if (lqr_outputs(plant, p)) points.push_back(p);
    }
    const double steps = static_cast<double>(resolution - 1);
    Point seed(2);
    seed << std::round(0.125 * steps) / steps, std::round(0.875 * steps) / steps;
    DomainGrid probe(points, IndexSet{0});
    auto seed_index = probe.find(seed);
    if (!seed_index) throw std::runtime_error("LQR seed weights failed synthesis");

    Problem p{"lqr", DomainGrid(std::move(points), IndexSet{*seed_index}), 1, sigma, 1.75, {}};
    p.truth = [plant](const Point& a) {
        auto y = lqr_outputs(plant, a);
        if (!y) throw std::runtime_error("LQR synthesis failed on a grid point");
        return *y;
    };
    return p;
}

}  // namespace colsafe
