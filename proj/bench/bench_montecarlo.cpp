// Serial reference vs OpenMP engine on the hot Monte Carlo loops.
#include <benchmark/benchmark.h>

#include "mimocap/montecarlo.hpp"
#include "mimocap/randmat.hpp"

namespace {

const mimocap::Scenario kRef;

void BM_SampleSinrSerial(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto s = mimocap::sample_sinr(kRef, k, 2000, 7, mimocap::Execution::Serial);
        benchmark::DoNotOptimize(s.data());
    }
    state.SetItemsProcessed(state.iterations() * 2000);
}

void BM_SampleSinrParallel(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto s = mimocap::sample_sinr(kRef, k, 2000, 7, mimocap::Execution::Parallel);
        benchmark::DoNotOptimize(s.data());
    }
    state.SetItemsProcessed(state.iterations() * 2000);
}

void BM_LambdaMomentsSerial(benchmark::State& state) {
    for (auto _ : state) {
        mimocap::MomentCache::instance().clear();
        benchmark::DoNotOptimize(
            mimocap::lambda_moments(4, 1, 50000, 11, mimocap::Execution::Serial));
    }
}

void BM_LambdaMomentsParallel(benchmark::State& state) {
    for (auto _ : state) {
        mimocap::MomentCache::instance().clear();
        benchmark::DoNotOptimize(
            mimocap::lambda_moments(4, 1, 50000, 11, mimocap::Execution::Parallel));
    }
}

BENCHMARK(BM_SampleSinrSerial)->Arg(2)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleSinrParallel)->Arg(2)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LambdaMomentsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LambdaMomentsParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
