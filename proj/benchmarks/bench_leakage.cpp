#include <benchmark/benchmark.h>

#include "skfb/leakage.hpp"

namespace {
const skfb::ChannelParams kParams{1.0, 30.0, 30.0, 40.0, 1.0};
}

// Cost of one exact leakage evaluation (builds and factorizes the
// (1+2N)-dimensional covariance).
static void BM_ExactLeakage(benchmark::State& state) {
  const auto n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(skfb::leakage::exact_leakage(
        skfb::SchemeVariant::kModified, kParams, n));
  }
}
BENCHMARK(BM_ExactLeakage)->Arg(25)->Arg(100)->Arg(200)->Arg(400)
    ->Unit(benchmark::kMillisecond);

static void BM_F2Bound(benchmark::State& state) {
  std::int64_t n = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(skfb::leakage::f2_bound(kParams, n));
    n = n % 1000 + 1;
  }
}
BENCHMARK(BM_F2Bound);
