#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <limits>
#include <vector>

namespace colsafe {

/// A point in parameter space.
using Point = Eigen::VectorXd;

/// Measurement vector ordered by output index: 0 is the reward, 1..q the constraints.
using Measurement = Eigen::VectorXd;

using Index = std::size_t;
using IndexSet = std::vector<Index>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Euclidean distance. Every distance in the library goes through here so that
/// set computations and their reference checks agree bit for bit.
inline double distance(const Point& a, const Point& b) {
    return (a - b).norm();
}

}  // namespace colsafe
