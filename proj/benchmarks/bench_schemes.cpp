#include <benchmark/benchmark.h>

#include "skfb/schemes.hpp"

namespace {
const skfb::ChannelParams kParams{1.0, 30.0, 30.0, 40.0, 1.0};
}

// Throughput of the full Monte Carlo path, including the counter-based
// draws; state.range(0) is the blocklength.
static void BM_MonteCarloExcess(benchmark::State& state) {
  const auto n = state.range(0);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(skfb::schemes::monte_carlo_excess_probability(
        skfb::SchemeVariant::kModified, kParams, n, 0.5, 10000, seed++, 1));
  }
  state.SetItemsProcessed(state.iterations() * 10000 * n);
}
BENCHMARK(BM_MonteCarloExcess)->Arg(10)->Arg(50)->Arg(200);
