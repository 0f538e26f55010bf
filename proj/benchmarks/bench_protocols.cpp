#include <benchmark/benchmark.h>

#include <cmath>

#include "entloc/explorer.hpp"
#include "entloc/protocols.hpp"

using namespace entloc;

namespace {

void BM_DistributedPipeline(benchmark::State& state) {
    ProtocolParams params;
    params.strategy = Strategy::Distributed;
    params.p1 = params.p2 = 0.3;
    params.q1 = params.q2 = 0.8;
    const DensityMatrix initial = params.initial.density();
    for (auto _ : state) {
        benchmark::DoNotOptimize(run(params, initial));
    }
}
BENCHMARK(BM_DistributedPipeline);

void BM_DistributedPipelineDamped(benchmark::State& state) {
    ProtocolParams params;
    params.strategy = Strategy::Distributed;
    params.p1 = params.p2 = 0.3;
    params.q1 = params.q2 = 0.8;
    params.noise = NoiseKind::AmplitudeDamping;
    params.d1 = params.d2 = 0.5;
    const DensityMatrix initial = params.initial.density();
    for (auto _ : state) {
        benchmark::DoNotOptimize(run(params, initial));
    }
}
BENCHMARK(BM_DistributedPipelineDamped);

void BM_Concurrence(benchmark::State& state) {
    const DensityMatrix pair =
        pure_to_density(w_like({0.5, 0.5, std::sqrt(0.5)})).reduced({3});
    for (auto _ : state) {
        benchmark::DoNotOptimize(concurrence(pair.matrix()));
    }
}
BENCHMARK(BM_Concurrence);

void BM_AssistedAverage(benchmark::State& state) {
    const StateVector psi = w_like({0.5, 0.5, std::sqrt(0.5)});
    double theta = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(assisted_average(psi, theta, 0.7));
        theta += 1e-6;
    }
}
BENCHMARK(BM_AssistedAverage);

void BM_OptimizeReversal(benchmark::State& state) {
    ProtocolParams base;
    base.strategy = Strategy::FullyLocal;
    base.noise = NoiseKind::Depolarizing;
    base.d1 = base.d2 = 0.2;
    base.p3 = 0.9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize_reversal(base, {"q3"}));
    }
}
BENCHMARK(BM_OptimizeReversal);

}  // namespace

BENCHMARK_MAIN();
