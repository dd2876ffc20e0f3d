#pragma once

#include <vector>

#include "colsafe/types.hpp"

namespace colsafe {

/**
 * Static kd-tree over a fixed point set, queried with Euclidean balls.
 *
 * Points keep the index they had in the constructor argument. Nodes are stored
 * so that children always come after their parent, which lets callers compute
 * per-node aggregates with a single reverse sweep over nodes().
 */
class KdTree {
public:
    struct Node {
        Index begin = 0;  // range into order()
        Index end = 0;
        int left = -1;
        int right = -1;
        bool leaf() const { return left < 0; }
    };

    KdTree() = default;
    explicit KdTree(std::vector<Point> points, Index leaf_size = 8);

    Index size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    Index dim() const { return dim_; }

    const Point& point(Index i) const { return points_[i]; }
    const std::vector<Node>& nodes() const { return nodes_; }
    /// Point indices permuted so that every node covers a contiguous range.
    const std::vector<Index>& order() const { return order_; }

    /// Smallest and largest distance from c to the bounding box of a node.
    double min_distance(int node, const Point& c) const;
    double max_distance(int node, const Point& c) const;

    /// Calls f(index, dist) for every point with distance(c, p) <= r.
    template <class F>
    void for_each_in_ball(const Point& c, double r, F&& f) const {
        if (nodes_.empty()) return;
        visit(0, c, r, f);
    }

    /**
     * Structural ball traversal for bulk set operations.
     *
     * enter(node) may return false to skip a subtree. inside(node) is called for
     * nodes whose box lies strictly within the ball with a relative margin, so the
     * exact predicate holds for all of its points. candidate(index) is called for
     * every remaining point of a leaf that intersects the ball; the caller applies
     * its own exact predicate there.
     */
    template <class Enter, class Inside, class Candidate>
    void visit_ball(const Point& c, double r, Enter&& enter, Inside&& inside,
                    Candidate&& candidate) const {
        if (nodes_.empty() || !(r >= 0.0)) return;
        visit_structural(0, c, r, enter, inside, candidate);
    }

private:
    int build(Index begin, Index end);

    template <class F>
    void visit(int n, const Point& c, double r, F& f) const {
        if (min_distance(n, c) > r + 1e-9 * (1.0 + r)) return;
        const Node& node = nodes_[static_cast<Index>(n)];
        if (node.leaf()) {
            for (Index k = node.begin; k < node.end; ++k) {
                const Index i = order_[k];
                const double d = distance(c, points_[i]);
                if (d <= r) f(i, d);
            }
            return;
        }
        visit(node.left, c, r, f);
        visit(node.right, c, r, f);
    }

    template <class Enter, class Inside, class Candidate>
    void visit_structural(int n, const Point& c, double r, Enter& enter, Inside& inside,
                          Candidate& candidate) const {
        if (!enter(n)) return;
        const double slack = 1e-9 * (1.0 + r);
        if (min_distance(n, c) > r + slack) return;
        if (max_distance(n, c) < r - slack) {
            inside(n);
            return;
        }
        const Node& node = nodes_[static_cast<Index>(n)];
        if (node.leaf()) {
            for (Index k = node.begin; k < node.end; ++k) candidate(order_[k]);
            return;
        }
        visit_structural(node.left, c, r, enter, inside, candidate);
        visit_structural(node.right, c, r, enter, inside, candidate);
    }

    std::vector<Point> points_;
    std::vector<Index> order_;
    std::vector<Node> nodes_;
    std::vector<double> lo_;  // node bounding boxes, dim_ values per node
    std::vector<double> hi_;
    Index dim_ = 0;
    Index leaf_size_ = 8;
};

}  // namespace colsafe
