#include <benchmark/benchmark.h>

#include <cmath>

#include "resilience/hypercube.hpp"

using namespace resilience;

static void BM_EpsilonAlpha(benchmark::State& state) {
  const auto c = power_law_correlator(1.0, 1.0);
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(epsilon_alpha(c, 0.1, 1.0, tol));
}
BENCHMARK(BM_EpsilonAlpha)->Unit(benchmark::kMicrosecond)->Arg(6)->Arg(8)->Arg(10);

static void BM_EpsilonWithPulses(benchmark::State& state) {
  const auto c = power_law_correlator(1.0, 1.0);
  const auto seq = equally_spaced_pulses(static_cast<int>(state.range(0)), 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(epsilon_with_pulses(c, 0.1, 1.0, seq));
}
BENCHMARK(BM_EpsilonWithPulses)->Unit(benchmark::kMicrosecond)->DenseRange(0, 4);

BENCHMARK_MAIN();
