#pragma once

#include <optional>

#include "colsafe/problem.hpp"

namespace colsafe {

/// Infinite-horizon discrete LQR gain from the Riccati fixed point. Empty if the iteration fails.
std::optional<Eigen::MatrixXd> dlqr(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
                                    const Eigen::MatrixXd& R, int max_iterations = 10000, double tolerance = 1e-11);

/**
 * Double integrator tuned by LQR weights. The controller is designed on the
 * nominal model; the simulated plant has a stronger actuator behind a
 * first-order lag, so aggressive weights overshoot in velocity.
 */
struct LqrPlant {
    double dt = 0.05;
    int horizon = 200;
    double actuator_gain = 1.5;   // plant input gain relative to the design model
    double actuator_lag = 0.15;   // seconds
    double speed_limit = 1.0;     // safe tube on |velocity|
    double speed_clip = 0.3;      // constraint saturates this far past the limit
    double reward_floor = -0.6;   // log-cost reward saturates here
    double output_scale = 0.2833;
    double q_exponent_lo = -1.0, q_exponent_hi = 2.0;
    double r_exponent_lo = -2.0, r_exponent_hi = 1.0;
};

struct Rollout {
    double cost = 0.0;        // ∫ p² + 0.1 v² dt
    double peak_speed = 0.0;  // max_t |v_t|
};

/// Closed-loop rollout from (p, v) = (1, 0) for unit-box parameters a = (a_q, a_r).
std::optional<Rollout> lqr_rollout(const LqrPlant& plant, const Point& a);

/// (reward, constraint) before noise; empty if LQR synthesis fails.
std::optional<Measurement> lqr_outputs(const LqrPlant& plant, const Point& a);

/**
 * LQR weight tuning on a 41 x 41 grid over the unit box, where
 * Q = diag(10^{q_w}, 1) and R = 10^{r_w} with exponents mapped linearly from a.
 * Reward is the scaled negative log tracking cost, the constraint is the
 * scaled margin of the velocity tube. Declared L = 1.75 is 1.5x the largest
 * pairwise slope on the grid.
 */
Problem make_lqr_problem(double sigma = 0.01, Index resolution = 41);

}  // namespace colsafe
