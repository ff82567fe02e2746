#include <benchmark/benchmark.h>

#include "conelab/estimators.hpp"
#include "conelab/metrical.hpp"
#include "conelab/rng.hpp"

using namespace conelab;

static void RecordScanCone(benchmark::State& state) {
    RealVector alpha = sample_unit_vector(42, 3);
    long n_max = state.range(0);
    for (auto _ : state) {
        auto recs = record_scan(alpha, ConeSpec::cone(1), n_max);
        benchmark::DoNotOptimize(recs);
    }
    state.SetComplexityN(n_max);
}
BENCHMARK(RecordScanCone)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

static void RecordScanFull(benchmark::State& state) {
    RealVector alpha = sample_unit_vector(42, 3);
    long n_max = state.range(0);
    for (auto _ : state) {
        auto recs = record_scan(alpha, ConeSpec::cone(3), n_max);
        benchmark::DoNotOptimize(recs);
    }
    state.SetComplexityN(n_max);
}
BENCHMARK(RecordScanFull)->RangeMultiplier(4)->Range(64, 1024)->Complexity();

static void LadderWalk(benchmark::State& state) {
    FixedPointAlpha fp = FixedPointAlpha::build(sample_unit_vector(7, 2));
    PositionLadder lad(fp.units[1], 20000);
    lad.extend_to(state.range(0));
    u128 target = fp.units[0] * 12345;
    long k;
    u128 d;
    for (auto _ : state) {
        auto w = lad.walk(target);
        w.next(k, d);
        benchmark::DoNotOptimize(k);
        target += fp.units[0];
    }
}
BENCHMARK(LadderWalk)->RangeMultiplier(8)->Range(128, 16384);

static void AxisScanGapSeries(benchmark::State& state) {
    RealVector fx = gap_series_vector(2, 4, 11);
    for (auto _ : state) {
        auto recs = axis_record_scan(fx, 1, state.range(0));
        benchmark::DoNotOptimize(recs);
    }
}
BENCHMARK(AxisScanGapSeries)->Range(1 << 14, 1 << 20);

BENCHMARK_MAIN();
