#include <benchmark/benchmark.h>

#include "conelab/counting.hpp"

using namespace conelab;

static void CountExact(benchmark::State& state) {
    long N = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(count_PN_exact(3, 1, N));
}
BENCHMARK(CountExact)->Arg(50)->Arg(200)->Arg(500);

static void CountMoebius(benchmark::State& state) {
    long N = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(count_PN_moebius(3, 1, N));
}
BENCHMARK(CountMoebius)->Arg(50)->Arg(200)->Arg(500);

static void MoebiusSumBound(benchmark::State& state) {
    shared_sieve(10000);
    long N = 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(moebius_sum_bound(3, N));
        N = N % 9973 + 2;
    }
}
BENCHMARK(MoebiusSumBound);

static void TotientSieve(benchmark::State& state) {
    for (auto _ : state) {
        Sieve sv(state.range(0));
        benchmark::DoNotOptimize(sv.totient(state.range(0) - 1));
    }
}
BENCHMARK(TotientSieve)->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();
