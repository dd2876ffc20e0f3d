#include "colsafe/domain_grid.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace colsafe {

DomainGrid::DomainGrid(std::vector<Point> points, IndexSet safe_seed)
    : points_(std::move(points)), seed_(std::move(safe_seed)) {
    if (points_.empty()) throw std::domain_error("domain grid is empty");
    dim_ = static_cast<Index>(points_.front().size());
    if (dim_ == 0) throw std::domain_error("domain grid points have dimension 0");

    std::set<std::vector<double>> seen;
    for (const auto& p : points_) {
        if (static_cast<Index>(p.size()) != dim_) {
            throw std::domain_error("domain grid points have inconsistent dimensions");
        }
        if (!p.allFinite()) throw std::domain_error("domain grid point is not finite");
        if (!seen.emplace(p.data(), p.data() + p.size()).second) {
            throw std::domain_error("domain grid contains duplicate points");
        }
    }

    std::sort(seed_.begin(), seed_.end());
    seed_.erase(std::unique(seed_.begin(), seed_.end()), seed_.end());
    if (seed_.empty()) throw std::domain_error("safe seed must not be empty");
    seed_mask_.assign(points_.size(), 0);
    for (Index i : seed_) {
        if (i >= points_.size()) throw std::domain_error("safe seed index out of range");
        seed_mask_[i] = 1;
    }
    tree_ = KdTree(points_);
}

DomainGrid DomainGrid::lattice(const std::vector<AxisSpec>& axes, const std::vector<Point>& seed_points) {
    if (axes.empty()) throw std::domain_error("lattice needs at least one axis");
    Index total = 1;
    for (const auto& ax : axes) {
        if (ax.resolution < 1 || !(ax.hi >= ax.lo)) {
            throw std::domain_error("invalid lattice axis");
        }
        if (ax.resolution == 1 && ax.hi != ax.lo) {
            throw std::domain_error("an axis with resolution 1 needs lo == hi");
        }
        total *= ax.resolution;
    }

    const auto d = static_cast<Eigen::Index>(axes.size());
    std::vector<Point> points;
    points.reserve(total);
    std::vector<Index> counter(axes.size(), 0);
    for (Index k = 0; k < total; ++k) {
        Point p(d);
        for (Eigen::Index j = 0; j < d; ++j) {
            const auto& ax = axes[static_cast<Index>(j)];
            const auto c = counter[static_cast<Index>(j)];
            p[j] = ax.resolution == 1
                       ? ax.lo
                       : ax.lo + (ax.hi - ax.lo) * static_cast<double>(c) / static_cast<double>(ax.resolution - 1);
        }
        points.push_back(std::move(p));
        for (Index j = axes.size(); j-- > 0;) {
            if (++counter[j] < axes[j].resolution) break;
            counter[j] = 0;
        }
    }

    DomainGrid probe(points, IndexSet{0});
    IndexSet seed;
    for (const auto& s : seed_points) {
        auto idx = probe.find(s, 1e-9);
        if (!idx) throw std::domain_error("safe seed point does not lie on the lattice");
        seed.push_back(*idx);
    }
    DomainGrid grid(std::move(points), std::move(seed));
    grid.axes_ = axes;
    return grid;
}

std::optional<Index> DomainGrid::find(const Point& p, double tol) const {
    if (static_cast<Index>(p.size()) != dim_) return std::nullopt;
    std::optional<Index> best;
    double best_d = kInf;
    tree_.for_each_in_ball(p, tol, [&](Index i, double d) {
        if (d < best_d || (d == best_d && best && i < *best)) {
            best_d = d;
            best = i;
        }
    });
    return best;
}

}  // namespace colsafe
