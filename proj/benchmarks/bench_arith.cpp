#include <benchmark/benchmark.h>

#include "conelab/fixed_point.hpp"
#include "conelab/linear_form.hpp"
#include "conelab/rng.hpp"

using namespace conelab;

static void LinearFormExact(benchmark::State& state) {
    RealVector alpha = sample_unit_vector(3, 3);
    IntVector x = IntVector::from_longs({411, -92, 17});
    for (auto _ : state) {
        auto v = linear_form_error(alpha, x);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(LinearFormExact);

static void LinearFormAlgebraic(benchmark::State& state) {
    auto s2 = PrecisionReal::from_algebraic({mpz_class(-2), mpz_class(0), mpz_class(1)},
                                            1, 2, state.range(0));
    auto s3 = PrecisionReal::from_algebraic({mpz_class(-3), mpz_class(0), mpz_class(1)},
                                            1, 2, state.range(0));
    RealVector alpha({s2, s3});
    IntVector x = IntVector::from_longs({411, -92});
    for (auto _ : state) {
        auto v = linear_form_error(alpha, x);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(LinearFormAlgebraic)->Arg(128)->Arg(512)->Arg(2048);

static void DistToNearestInt(benchmark::State& state) {
    auto r = PrecisionReal::from_decimal("12345.6789012345", 256);
    for (auto _ : state) {
        auto d = dist_to_nearest_int(r);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(DistToNearestInt);

static void FixedPointBuild(benchmark::State& state) {
    RealVector alpha = sample_unit_vector(9, 3);
    for (auto _ : state) {
        auto fp = FixedPointAlpha::build(alpha);
        benchmark::DoNotOptimize(fp);
    }
}
BENCHMARK(FixedPointBuild);

BENCHMARK_MAIN();
