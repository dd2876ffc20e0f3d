#include "colsafe/kd_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace colsafe {

KdTree::KdTree(std::vector<Point> points, Index leaf_size)
    : points_(std::move(points)), leaf_size_(std::max<Index>(leaf_size, 1)) {
    if (points_.empty()) return;
    dim_ = static_cast<Index>(points_.front().size());
    for (const auto& p : points_) {
        if (static_cast<Index>(p.size()) != dim_) {
            throw std::domain_error("kd-tree points have inconsistent dimensions");
        }
    }
    order_.resize(points_.size());
    std::iota(order_.begin(), order_.end(), Index{0});
    nodes_.reserve(2 * points_.size() / leaf_size_ + 1);
    build(0, points_.size());
}

int KdTree::build(Index begin, Index end) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{begin, end, -1, -1});
    lo_.resize(lo_.size() + dim_, kInf);
    hi_.resize(hi_.size() + dim_, -kInf);
    double* lo = &lo_[static_cast<Index>(id) * dim_];
    double* hi = &hi_[static_cast<Index>(id) * dim_];
    for (Index k = begin; k < end; ++k) {
        const Point& p = points_[order_[k]];
        for (Index j = 0; j < dim_; ++j) {
            lo[j] = std::min(lo[j], p[static_cast<Eigen::Index>(j)]);
            hi[j] = std::max(hi[j], p[static_cast<Eigen::Index>(j)]);
        }
    }
    if (end - begin <= leaf_size_) return id;

    Index axis = 0;
    double widest = -1.0;
    for (Index j = 0; j < dim_; ++j) {
        if (hi[j] - lo[j] > widest) {
            widest = hi[j] - lo[j];
            axis = j;
        }
    }
    if (widest <= 0.0) return id;  // all points coincide

    const Index mid = begin + (end - begin) / 2;
    const auto ax = static_cast<Eigen::Index>(axis);
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                     order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](Index a, Index b) { return points_[a][ax] < points_[b][ax]; });
    const int left = build(begin, mid);
    const int right = build(mid, end);
    nodes_[static_cast<Index>(id)].left = left;
    nodes_[static_cast<Index>(id)].right = right;
    return id;
}

double KdTree::min_distance(int node, const Point& c) const {
    const double* lo = &lo_[static_cast<Index>(node) * dim_];
    const double* hi = &hi_[static_cast<Index>(node) * dim_];
    double sum = 0.0;
    for (Index j = 0; j < dim_; ++j) {
        const double x = c[static_cast<Eigen::Index>(j)];
        const double d = x < lo[j] ? lo[j] - x : (x > hi[j] ? x - hi[j] : 0.0);
        sum += d * d;
    }
    return std::sqrt(sum);
}

double KdTree::max_distance(int node, const Point& c) const {
    const double* lo = &lo_[static_cast<Index>(node) * dim_];
    const double* hi = &hi_[static_cast<Index>(node) * dim_];
    double sum = 0.0;
    for (Index j = 0; j < dim_; ++j) {
        const double x = c[static_cast<Eigen::Index>(j)];
        const double d = std::max(std::abs(x - lo[j]), std::abs(x - hi[j]));
        sum += d * d;
    }
    return std::sqrt(sum);
}

}  // namespace colsafe
