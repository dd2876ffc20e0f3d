#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "colsafe/nw_estimator.hpp"
#include "colsafe/problem.hpp"
#include "colsafe/safe_sets.hpp"

namespace colsafe {

/// Source of the confidence intervals Q_n that drive the safe-set machinery.
class ConfidenceModel {
public:
    virtual ~ConfidenceModel() = default;
    virtual void ingest(const Observation& obs) = 0;
    virtual IntervalTable intervals(const DomainGrid& grid) = 0;
    virtual Index size() const = 0;
};

/// μ ± β from the Nadaraya-Watson estimator.
class NwConfidenceModel final : public ConfidenceModel {
public:
    NwConfidenceModel(EstimatorConfig config, Index dim, Index outputs) : estimator_(std::move(config), dim, outputs) {}

    void ingest(const Observation& obs) override { estimator_.ingest(obs); }
    IntervalTable intervals(const DomainGrid& grid) override { return nw_intervals(estimator_, grid); }
    Index size() const override { return estimator_.size(); }
    const NwEstimator& estimator() const { return estimator_; }

private:
    NwEstimator estimator_;
};

/// One iteration of the loop, in trace order.
struct TraceRow {
    Index iteration = 0;
    Index index = 0;  // grid index of a_n
    Point point;
    Measurement measurement;
    Index safe_size = 0;
    Index maximizers_size = 0;
    Index expanders_size = 0;
    Index expansion_count = 0;  // e_n(a_n)
    double t_bounds_ms = 0.0;
    double t_sets_ms = 0.0;
    double t_select_ms = 0.0;
    double t_ingest_ms = 0.0;
    std::optional<Index> true_violations;
    Index best_guess = 0;
    double best_lower = 0.0;  // l_n(â_n, 0)
};

struct RunOptions {
    Index budget = 100;
    std::uint64_t seed = 0;
    double lipschitz = 1.0;
    bool record_wall_times = true;
    bool annotate_truth = true;
    /// Called after every iteration with the committed state; used by invariant checkers.
    std::function<void(const TraceRow&, const LoopState&, const BoundState&)> observer;
};

struct RunResult {
    std::vector<TraceRow> rows;
    bool converged = false;
    Index best_guess = 0;
    Point best_point;
    double best_lower = 0.0;
    LoopState final_state;
    std::optional<BoundState> final_bounds;
    Index intersection_violations = 0;
    Index total_true_violations = 0;  // iterations with at least one violated constraint
};

/**
 * Safe exploration loop: update bounds, safe set, maximizers and expanders,
 * pick the widest candidate, measure, ingest. Stops after `budget` evaluations
 * or when no candidate is left. After the loop the bounds and sets are
 * refreshed once with all data before the best guess is reported.
 */
RunResult run_safe_exploration(ConfidenceModel& model, const Problem& problem, const RunOptions& options);

/// The loop with Nadaraya-Watson intervals.
RunResult run_colsafe(const Problem& problem, const EstimatorConfig& config, const RunOptions& options);

}  // namespace colsafe
