#pragma once

#include <optional>
#include <vector>

#include "colsafe/domain_grid.hpp"
#include "colsafe/nw_estimator.hpp"
#include "colsafe/types.hpp"

namespace colsafe {

/// Confidence intervals Q_n for every (grid point, output) pair.
struct IntervalTable {
    Eigen::MatrixXd lower;  // rows: grid points, cols: outputs
    Eigen::MatrixXd upper;
};

/// Q_n = [μ − β, μ + β] on every grid point; the whole real line where κ = 0.
IntervalTable nw_intervals(const NwEstimator& estimator, const DomainGrid& grid);

/**
 * Contained sets C_n as lower/upper bound matrices over extended reals.
 *
 * IEEE infinities carry the arithmetic: u − L·d stays +inf for u = +inf, and
 * w = u − l is +inf whenever either end is unbounded.
 */
struct BoundState {
    BoundState(const DomainGrid& grid, Index outputs);

    Eigen::MatrixXd l;
    Eigen::MatrixXd u;
    Index intersection_violations = 0;

    Index points() const { return static_cast<Index>(l.rows()); }
    Index outputs() const { return static_cast<Index>(l.cols()); }
    double width(Index a, Index i) const;
    /// max over outputs of u − l.
    double max_width(Index a) const;
};

/// C_n = C_{n−1} ∩ Q_n. An empty intersection keeps C_{n−1} at that entry and is counted.
void update_bounds(BoundState& bounds, const IntervalTable& intervals);
void update_bounds(BoundState& bounds, const NwEstimator& estimator, const DomainGrid& grid);

/// S_n = ∩_i ∪_{a ∈ S_{n−1}} { a' : l(a, i) − L‖a − a'‖ >= 0 }, sorted ascending.
IndexSet update_safe_set(const IndexSet& previous, const BoundState& bounds, const DomainGrid& grid,
                         double lipschitz);

/// M_n: safe points whose reward upper bound reaches the best reward lower bound.
IndexSet compute_maximizers(const IndexSet& safe, const BoundState& bounds);

struct ExpanderResult {
    IndexSet expanders;
    std::vector<Index> counts;  // e_n(a) for every grid point, zero outside S_n
};

/// G_n with the full counts e_n(a) of unsafe points an optimistic measurement at a could certify.
ExpanderResult compute_expanders(const IndexSet& safe, const BoundState& bounds, const DomainGrid& grid,
                                 double lipschitz);

/// argmax over M_n ∪ G_n of the widest interval; smallest index wins ties. Empty means converged.
std::optional<Index> select_next(const IndexSet& maximizers, const IndexSet& expanders,
                                 const BoundState& bounds);

/// argmax over S_n of the reward lower bound; smallest index wins ties.
Index best_guess(const IndexSet& safe, const BoundState& bounds);

/// S_n, M_n, G_n and the point chosen in the current iteration.
struct LoopState {
    IndexSet safe;
    IndexSet maximizers;
    IndexSet expanders;
    std::vector<Index> expansion_counts;
    std::optional<Index> next;
    Index best = 0;
};

/// One decision step on already-updated bounds: safe set, candidate sets, next point, best guess.
void update_sets(LoopState& state, const BoundState& bounds, const DomainGrid& grid, double lipschitz);

}  // namespace colsafe
