#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "colsafe/domain_grid.hpp"
#include "colsafe/types.hpp"

namespace colsafe {

/**
 * Benchmark problem: a grid with safe seed, a noise model, and the shared
 * Lipschitz constant. `truth` returns the exact (reward, constraints...) vector;
 * the learner only ever sees `evaluate`.
 */
struct Problem {
    std::string name;
    DomainGrid grid;
    Index constraints = 1;  // q
    double sigma = 0.01;
    double lipschitz = 1.0;
    std::function<Measurement(const Point&)> truth;

    Index outputs() const { return constraints + 1; }

    /// Exact values plus i.i.d. Gaussian noise of scale sigma, a pure function of (a, seed).
    /// Throws std::domain_error for points that are not on the grid.
    Measurement evaluate(const Point& a, std::uint64_t seed) const;

    /// Ground truth for test harnesses and trace annotation. Same grid check as evaluate.
    Measurement ground_truth(const Point& a) const;

    /// Number of constraints with g_i(a) < 0.
    Index true_violations(const Point& a) const;
};

/**
 * Two-dimensional analytic problem on [0, 1]^2 (21 x 21 grid):
 *   f(a) = 1 − ‖a − (0.75, 0.70)‖,   g(a) = 0.5 − ‖a − (0.4, 0.4)‖,
 * both 1-Lipschitz. The safe disk contains the seed (0.25, 0.25) and the optimum.
 */
Problem make_synthetic_2d(double sigma = 0.01, Index resolution = 21);

/// Lookup by name: "synthetic-2d" or "lqr". Throws std::invalid_argument.
Problem make_problem(const std::string& name, double sigma, Index resolution);

}  // namespace colsafe
