#pragma once

#include <optional>
#include <vector>

#include "colsafe/kd_tree.hpp"
#include "colsafe/types.hpp"

namespace colsafe {

struct AxisSpec {
    double lo = 0.0;
    double hi = 1.0;
    Index resolution = 2;
};

/**
 * Finite parameter set A with its safe seed S_0.
 *
 * Point order is fixed at construction; every tie-break in the set logic
 * resolves toward the smaller index.
 */
class DomainGrid {
public:
    /// Throws std::domain_error on an empty seed, duplicate points, or out-of-range seed indices.
    DomainGrid(std::vector<Point> points, IndexSet safe_seed);

    /// Axis-aligned lattice in row-major order (last axis varies fastest). Seed
    /// points must coincide with lattice points up to a tiny tolerance.
    static DomainGrid lattice(const std::vector<AxisSpec>& axes, const std::vector<Point>& seed_points);

    Index size() const { return points_.size(); }
    Index dim() const { return dim_; }
    const Point& point(Index i) const { return points_[i]; }
    const std::vector<Point>& points() const { return points_; }
    const IndexSet& safe_seed() const { return seed_; }
    bool is_seed(Index i) const { return seed_mask_[i] != 0; }
    const KdTree& index() const { return tree_; }
    const std::vector<AxisSpec>& axes() const { return axes_; }

    /// Grid index of p if it coincides with a grid point (within tol), else empty.
    std::optional<Index> find(const Point& p, double tol = 1e-9) const;

private:
    std::vector<Point> points_;
    IndexSet seed_;
    std::vector<char> seed_mask_;
    KdTree tree_;
    std::vector<AxisSpec> axes_;
    Index dim_ = 0;
};

}  // namespace colsafe
