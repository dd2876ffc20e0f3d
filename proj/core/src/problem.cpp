#include "colsafe/problem.hpp"

#include <cmath>
#include <stdexcept>

#include "colsafe/lqr.hpp"
#include "colsafe/rng.hpp"

namespace colsafe {
namespace {

Index require_on_grid(const DomainGrid& grid, const Point& a) {
    auto idx = grid.find(a);
    if (!idx) throw std::domain_error("point is not on the problem grid");
    return *idx;
}

double snap(double x, Index resolution) {
    const double steps = static_cast<double>(resolution - 1);
    return std::round(x * steps) / steps;
}

}  // namespace

Measurement Problem::evaluate(const Point& a, std::uint64_t seed) const {
    require_on_grid(grid, a);
    Measurement y = truth(a);
    if (sigma > 0.0) {
        std::mt19937_64 engine(seed);
        std::normal_distribution<double> noise(0.0, sigma);
        for (Eigen::Index i = 0; i < y.size(); ++i) y[i] += noise(engine);
    }
    return y;
}

Measurement Problem::ground_truth(const Point& a) const {
    require_on_grid(grid, a);
    return truth(a);
}

Index Problem::true_violations(const Point& a) const {
    const Measurement y = ground_truth(a);
    Index count = 0;
    for (Eigen::Index i = 1; i < y.size(); ++i) count += y[i] < 0.0 ? 1 : 0;
    return count;
}

Problem make_synthetic_2d(double sigma, Index resolution) {
    if (resolution < 2) throw std::domain_error("synthetic problem needs resolution >= 2");
    Point seed(2);
    seed << snap(0.25, resolution), snap(0.25, resolution);
    std::vector<AxisSpec> axes{{0.0, 1.0, resolution}, {0.0, 1.0, resolution}};

    Problem p{"synthetic-2d", DomainGrid::lattice(axes, {seed}), 1, sigma, 1.0, {}};
    p.truth = [](const Point& a) {
        const Eigen::Vector2d optimum(0.75, 0.70);
        const Eigen::Vector2d obstacle_center(0.4, 0.4);
        Measurement y(2);
        y[0] = 1.0 - (a - optimum).norm();
        y[1] = 0.5 - (a - obstacle_center).norm();
        return y;
    };
    return p;
}

Problem make_problem(const std::string& name, double sigma, Index resolution) {
    if (name == "synthetic-2d") return make_synthetic_2d(sigma, resolution);
    if (name == "lqr") return make_lqr_problem(sigma, resolution);
    throw std::invalid_argument("unknown problem '" + name + "'");
}

}  // namespace colsafe
