#include <benchmark/benchmark.h>

#include "colsafe/gp.hpp"
#include "colsafe/loop.hpp"
#include "colsafe/lqr.hpp"

using namespace colsafe;

namespace {

const Problem& lqr() {
    static const Problem p = make_lqr_problem();
    return p;
}

// Observations from an actual exploration run, so the data sit where the loop puts them.
const std::vector<Observation>& lqr_observations() {
    static const std::vector<Observation> obs = [] {
        EstimatorConfig c;
        c.kernel.bandwidth = 0.05;
        c.lipschitz = lqr().lipschitz;
        RunOptions opt;
        opt.budget = 400;
        opt.seed = 1;
        opt.record_wall_times = false;
        std::vector<Observation> out;
        for (const auto& row : run_colsafe(lqr(), c, opt).rows) out.push_back({row.point, row.measurement, row.iteration});
        return out;
    }();
    return obs;
}

template <class Model>
void iteration(benchmark::State& state, Model& model) {
    const auto& obs = lqr_observations();
    for (Index t = 0; t < Index(state.range(0)) && t < obs.size(); ++t) model.ingest(obs[t]);
    const auto& grid = lqr().grid;
    for (auto _ : state) {
        BoundState bounds(grid, 2);
        update_bounds(bounds, model.intervals(grid));
        LoopState s;
        s.safe = grid.safe_seed();
        update_sets(s, bounds, grid, lqr().lipschitz);
        benchmark::DoNotOptimize(s.next);
    }
}

}  // namespace

// One bounds + sets + select step on the 41 x 41 LQR grid after n observations.
static void BM_IterationNadarayaWatson(benchmark::State& state) {
    EstimatorConfig c;
    c.kernel.bandwidth = 0.05;
    c.lipschitz = lqr().lipschitz;
    NwConfidenceModel model(c, 2, 2);
    iteration(state, model);
}
BENCHMARK(BM_IterationNadarayaWatson)->Arg(50)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_IterationGaussianProcess(benchmark::State& state) {
    GpConfig c;
    c.signal_variance = 0.1;
    GpConfidenceModel model(c, 2, 2);
    iteration(state, model);
}
BENCHMARK(BM_IterationGaussianProcess)->Arg(50)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
