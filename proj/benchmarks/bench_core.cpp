#include <benchmark/benchmark.h>

#include "fockledger/families.hpp"
#include "fockledger/genfun.hpp"
#include "fockledger/operators.hpp"
#include "fockledger/statistics.hpp"

using namespace fockledger;

static void BM_BuildCoherent(benchmark::State& state) {
    const double alpha = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build(Coherent{alpha}));
    }
}
BENCHMARK(BM_BuildCoherent)->Arg(1)->Arg(3)->Arg(6);

static void BM_BuildPhaseCoherent(benchmark::State& state) {
    const double z = 1.0 - 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build(PhaseCoherent{z}));
    }
}
BENCHMARK(BM_BuildPhaseCoherent)->Arg(4)->Arg(16)->Arg(64);

static void BM_LogQFamily(benchmark::State& state) {
    const double q = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_q_family(1.0, q));
    }
}
BENCHMARK(BM_LogQFamily)->Arg(1)->Arg(8)->Arg(50);

static void BM_SubtractAndStats(benchmark::State& state) {
    const FockState psi = build(NegativeBinomial{0.8, 2.0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(stats(subtracted(psi)));
    }
}
BENCHMARK(BM_SubtractAndStats);

static void BM_TransformMinus(benchmark::State& state) {
    const GenFun g(distribution_of(build(NegativeBinomial{0.8, 2.0})));
    for (auto _ : state) {
        benchmark::DoNotOptimize(transform(g, TransformKind::minus));
    }
}
BENCHMARK(BM_TransformMinus);

BENCHMARK_MAIN();
