#include "colsafe/safe_sets.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace colsafe {

IntervalTable nw_intervals(const NwEstimator& estimator, const DomainGrid& grid) {
    if (estimator.dim() != grid.dim()) {
        throw std::domain_error("estimator and grid dimensions differ");
    }
    const auto rows = static_cast<Eigen::Index>(grid.size());
    const auto cols = static_cast<Eigen::Index>(estimator.outputs());
    IntervalTable q{Eigen::MatrixXd::Constant(rows, cols, -kInf), Eigen::MatrixXd::Constant(rows, cols, kInf)};
    for (Eigen::Index a = 0; a < rows; ++a) {
        const Estimate est = estimator.estimate(grid.point(static_cast<Index>(a)));
        if (!est.mu) continue;
        q.lower.row(a) = (est.mu->array() - est.beta).matrix().transpose();
        q.upper.row(a) = (est.mu->array() + est.beta).matrix().transpose();
    }
    return q;
}

BoundState::BoundState(const DomainGrid& grid, Index outputs)
    : l(Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(outputs), -kInf)),
      u(Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(outputs), kInf)) {
    if (outputs == 0) throw std::domain_error("bound state needs at least one output");
    for (Index a : grid.safe_seed()) {
        for (Eigen::Index i = 1; i < l.cols(); ++i) l(static_cast<Eigen::Index>(a), i) = 0.0;
    }
}

double BoundState::width(Index a, Index i) const {
    return u(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(i)) -
           l(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(i));
}

double BoundState::max_width(Index a) const {
    double w = -kInf;
    for (Index i = 0; i < outputs(); ++i) w = std::max(w, width(a, i));
    return w;
}

void update_bounds(BoundState& bounds, const IntervalTable& intervals) {
    if (intervals.lower.rows() != bounds.l.rows() || intervals.lower.cols() != bounds.l.cols() ||
        intervals.upper.rows() != bounds.u.rows() || intervals.upper.cols() != bounds.u.cols()) {
        throw std::domain_error("interval table does not match bound state");
    }
    for (Eigen::Index a = 0; a < bounds.l.rows(); ++a) {
        for (Eigen::Index i = 0; i < bounds.l.cols(); ++i) {
            const double lo = std::max(bounds.l(a, i), intervals.lower(a, i));
            const double hi = std::min(bounds.u(a, i), intervals.upper(a, i));
            if (lo > hi) {
                ++bounds.intersection_violations;
                continue;
            }
            bounds.l(a, i) = lo;
            bounds.u(a, i) = hi;
        }
    }
}

void update_bounds(BoundState& bounds, const NwEstimator& estimator, const DomainGrid& grid) {
    update_bounds(bounds, nw_intervals(estimator, grid));
}

namespace {

/// Marks every grid point within reach of `value − L·d >= 0` for one certifying center.
/// Fully covered kd-nodes are flagged so later centers skip them.
void mark_reach(const DomainGrid& grid, const Point& center, double value, double lipschitz,
                std::vector<char>& covered, std::vector<char>& node_full) {
    const KdTree& tree = grid.index();
    const double radius = value / lipschitz;
    tree.visit_ball(
        center, radius, [&](int n) { return node_full[static_cast<Index>(n)] == 0; },
        [&](int n) {
            node_full[static_cast<Index>(n)] = 1;
            const auto& node = tree.nodes()[static_cast<Index>(n)];
            for (Index k = node.begin; k < node.end; ++k) covered[tree.order()[k]] = 1;
        },
        [&](Index j) {
            if (!covered[j] && value - lipschitz * distance(center, grid.point(j)) >= 0.0) covered[j] = 1;
        });
}

}  // namespace

IndexSet update_safe_set(const IndexSet& previous, const BoundState& bounds, const DomainGrid& grid,
                         double lipschitz) {
    if (bounds.points() != grid.size()) throw std::domain_error("bound state does not match grid");
    const Index n = grid.size();
    std::vector<char> safe(n, 1);

    for (Index i = 1; i < bounds.outputs(); ++i) {
        const auto col = static_cast<Eigen::Index>(i);
        std::vector<Index> certifiers;
        for (Index a : previous) {
            if (bounds.l(static_cast<Eigen::Index>(a), col) >= 0.0) certifiers.push_back(a);
        }
        // Large reach first so whole subtrees get flagged early.
        std::stable_sort(certifiers.begin(), certifiers.end(), [&](Index x, Index y) {
            return bounds.l(static_cast<Eigen::Index>(x), col) > bounds.l(static_cast<Eigen::Index>(y), col);
        });

        std::vector<char> covered(n, 0);
        std::vector<char> node_full(grid.index().nodes().size(), 0);
        for (Index a : certifiers) {
            mark_reach(grid, grid.point(a), bounds.l(static_cast<Eigen::Index>(a), col), lipschitz, covered,
                       node_full);
            if (node_full[0]) break;
        }
        for (Index j = 0; j < n; ++j) safe[j] = static_cast<char>(safe[j] && covered[j]);
    }

    IndexSet result;
    for (Index j = 0; j < n; ++j) {
        if (safe[j]) result.push_back(j);
    }
    return result;
}

IndexSet compute_maximizers(const IndexSet& safe, const BoundState& bounds) {
    assert(!safe.empty());
    double best_lower = -kInf;
    for (Index a : safe) best_lower = std::max(best_lower, bounds.l(static_cast<Eigen::Index>(a), 0));
    IndexSet result;
    for (Index a : safe) {
        if (bounds.u(static_cast<Eigen::Index>(a), 0) >= best_lower) result.push_back(a);
    }
    return result;
}

ExpanderResult compute_expanders(const IndexSet& safe, const BoundState& bounds, const DomainGrid& grid,
                                 double lipschitz) {
    if (bounds.points() != grid.size()) throw std::domain_error("bound state does not match grid");
    const Index n = grid.size();
    ExpanderResult result;
    result.counts.assign(n, 0);
    if (bounds.outputs() < 2) return result;

    std::vector<char> unsafe(n, 1);
    for (Index a : safe) unsafe[a] = 0;

    // Unsafe points per kd-node; children are stored after their parent.
    const KdTree& tree = grid.index();
    const auto& nodes = tree.nodes();
    std::vector<Index> node_unsafe(nodes.size(), 0);
    for (Index k = nodes.size(); k-- > 0;) {
        const auto& node = nodes[k];
        if (node.leaf()) {
            for (Index p = node.begin; p < node.end; ++p) node_unsafe[k] += unsafe[tree.order()[p]];
        } else {
            node_unsafe[k] = node_unsafe[static_cast<Index>(node.left)] + node_unsafe[static_cast<Index>(node.right)];
        }
    }
    if (node_unsafe[0] == 0) return result;

    for (Index a : safe) {
        // ∃ i: u(a,i) − L·d >= 0  ⇔  max_i u(a,i) − L·d >= 0
        double reach = -kInf;
        for (Eigen::Index i = 1; i < bounds.u.cols(); ++i) reach = std::max(reach, bounds.u(static_cast<Eigen::Index>(a), i));
        if (reach < 0.0) continue;
        const Point& center = grid.point(a);
        Index count = 0;
        tree.visit_ball(
            center, reach / lipschitz, [&](int k) { return node_unsafe[static_cast<Index>(k)] > 0; },
            [&](int k) { count += node_unsafe[static_cast<Index>(k)]; },
            [&](Index j) {
                if (unsafe[j] && reach - lipschitz * distance(center, grid.point(j)) >= 0.0) ++count;
            });
        result.counts[a] = count;
        if (count > 0) result.expanders.push_back(a);
    }
    return result;
}

std::optional<Index> select_next(const IndexSet& maximizers, const IndexSet& expanders, const BoundState& bounds) {
    IndexSet candidates;
    candidates.reserve(maximizers.size() + expanders.size());
    std::set_union(maximizers.begin(), maximizers.end(), expanders.begin(), expanders.end(),
                   std::back_inserter(candidates));
    std::optional<Index> best;
    double best_width = -kInf;
    for (Index a : candidates) {
        const double w = bounds.max_width(a);
        if (!best || w > best_width) {
            best = a;
            best_width = w;
        }
    }
    return best;
}

Index best_guess(const IndexSet& safe, const BoundState& bounds) {
    if (safe.empty()) throw std::domain_error("best guess needs a nonempty safe set");
    Index best = safe.front();
    double best_lower = bounds.l(static_cast<Eigen::Index>(best), 0);
    for (Index a : safe) {
        const double v = bounds.l(static_cast<Eigen::Index>(a), 0);
        if (v > best_lower) {
            best = a;
            best_lower = v;
        }
    }
    return best;
}

void update_sets(LoopState& state, const BoundState& bounds, const DomainGrid& grid, double lipschitz) {
    state.safe = update_safe_set(state.safe, bounds, grid, lipschitz);
    state.maximizers = compute_maximizers(state.safe, bounds);
    auto expanders = compute_expanders(state.safe, bounds, grid, lipschitz);
    state.expanders = std::move(expanders.expanders);
    state.expansion_counts = std::move(expanders.counts);
    state.next = select_next(state.maximizers, state.expanders, bounds);
    state.best = best_guess(state.safe, bounds);
}

}  // namespace colsafe
