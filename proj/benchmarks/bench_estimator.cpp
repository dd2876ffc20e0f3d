#include <benchmark/benchmark.h>

#include <random>

#include "colsafe/nw_estimator.hpp"

using namespace colsafe;

namespace {

Point uniform_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    Point p(2);
    p << U(rng), U(rng);
    return p;
}

NwEstimator filled(Index n, double bandwidth) {
    EstimatorConfig c;
    c.kernel.bandwidth = bandwidth;
    NwEstimator est(c, 2, 2);
    std::mt19937_64 rng(n);
    Measurement v(2);
    v << 0.1, 0.2;
    for (Index t = 0; t < n; ++t) est.ingest({uniform_point(rng), v, t + 1});
    return est;
}

}  // namespace

// Fixed small bandwidth: query cost should track the neighbour count, not n.
static void BM_KappaQuery(benchmark::State& state) {
    const auto est = filled(Index(state.range(0)), 0.005);
    std::mt19937_64 rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(est.kappa(uniform_point(rng)));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KappaQuery)->RangeMultiplier(10)->Range(1000, 100000)->Complexity();

static void BM_Estimate(benchmark::State& state) {
    const auto est = filled(Index(state.range(0)), 0.05);
    std::mt19937_64 rng(2);
    for (auto _ : state) benchmark::DoNotOptimize(est.estimate(uniform_point(rng)));
}
BENCHMARK(BM_Estimate)->RangeMultiplier(10)->Range(1000, 100000);

static void BM_Ingest(benchmark::State& state) {
    const Index n = Index(state.range(0));
    std::mt19937_64 rng(3);
    std::vector<Point> pts;
    for (Index t = 0; t < n; ++t) pts.push_back(uniform_point(rng));
    Measurement v(2);
    v << 0.1, 0.2;
    for (auto _ : state) {
        EstimatorConfig c;
        c.kernel.bandwidth = 0.01;
        NwEstimator est(c, 2, 2);
        for (Index t = 0; t < n; ++t) est.ingest({pts[t], v, t + 1});
        benchmark::DoNotOptimize(est.size());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Ingest)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
