#include "colsafe/loop.hpp"

#include <chrono>
#include <stdexcept>

#include "colsafe/rng.hpp"

namespace colsafe {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point from, Clock::time_point to) {
    return std::chrono::duration<double, std::milli>(to - from).count();
}

}  // namespace

RunResult run_safe_exploration(ConfidenceModel& model, const Problem& problem, const RunOptions& options) {
    if (options.budget < 1) throw std::domain_error("budget must be at least 1");
    if (!(options.lipschitz > 0.0)) throw std::domain_error("Lipschitz constant must be positive");

    const DomainGrid& grid = problem.grid;
    BoundState bounds(grid, problem.outputs());
    LoopState state;
    state.safe = grid.safe_seed();
    RunResult result;

    for (Index n = 1; n <= options.budget; ++n) {
        TraceRow row;
        row.iteration = n;

        const auto t0 = Clock::now();
        update_bounds(bounds, model.intervals(grid));
        const auto t1 = Clock::now();
        state.safe = update_safe_set(state.safe, bounds, grid, options.lipschitz);
        state.maximizers = compute_maximizers(state.safe, bounds);
        auto expanders = compute_expanders(state.safe, bounds, grid, options.lipschitz);
        state.expanders = std::move(expanders.expanders);
        state.expansion_counts = std::move(expanders.counts);
        const auto t2 = Clock::now();
        state.next = select_next(state.maximizers, state.expanders, bounds);
        state.best = best_guess(state.safe, bounds);
        const auto t3 = Clock::now();

        if (!state.next) {
            result.converged = true;
            break;
        }

        const Index chosen = *state.next;
        row.index = chosen;
        row.point = grid.point(chosen);
        row.measurement = problem.evaluate(row.point, derive_seed(options.seed, Stream::ProblemNoise, n));
        const auto t4 = Clock::now();
        model.ingest(Observation{row.point, row.measurement, n});
        const auto t5 = Clock::now();

        row.safe_size = state.safe.size();
        row.maximizers_size = state.maximizers.size();
        row.expanders_size = state.expanders.size();
        row.expansion_count = state.expansion_counts[chosen];
        if (options.record_wall_times) {
            row.t_bounds_ms = elapsed_ms(t0, t1);
            row.t_sets_ms = elapsed_ms(t1, t2);
            row.t_select_ms = elapsed_ms(t2, t3);
            row.t_ingest_ms = elapsed_ms(t4, t5);
        }
        if (options.annotate_truth && problem.truth) {
            row.true_violations = problem.true_violations(row.point);
            if (*row.true_violations > 0) ++result.total_true_violations;
        }
        row.best_guess = state.best;
        row.best_lower = bounds.l(static_cast<Eigen::Index>(state.best), 0);

        if (options.observer) options.observer(row, state, bounds);
        result.rows.push_back(std::move(row));
    }

    // Final refresh so the last measurement informs the reported best guess.
    update_bounds(bounds, model.intervals(grid));
    update_sets(state, bounds, grid, options.lipschitz);

    result.best_guess = state.best;
    result.best_point = grid.point(state.best);
    result.best_lower = bounds.l(static_cast<Eigen::Index>(state.best), 0);
    result.intersection_violations = bounds.intersection_violations;
    result.final_state = std::move(state);
    result.final_bounds = std::move(bounds);
    return result;
}

RunResult run_colsafe(const Problem& problem, const EstimatorConfig& config, const RunOptions& options) {
    NwConfidenceModel model(config, problem.grid.dim(), problem.outputs());
    RunOptions opts = options;
    opts.lipschitz = config.lipschitz;
    return run_safe_exploration(model, problem, opts);
}

}  // namespace colsafe
