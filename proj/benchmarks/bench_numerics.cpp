#include <benchmark/benchmark.h>

#include "skfb/numerics.hpp"

static void BM_QFunction(benchmark::State& state) {
  double x = -6.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(skfb::numerics::q_function(x));
    x += 1e-4;
    if (x > 6.0) x = -6.0;
  }
}
BENCHMARK(BM_QFunction);

static void BM_QInverse(benchmark::State& state) {
  double p = 1e-8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(skfb::numerics::q_inverse(p));
    p *= 1.7;
    if (p > 0.99) p = 1e-8;
  }
}
BENCHMARK(BM_QInverse);

BENCHMARK_MAIN();
