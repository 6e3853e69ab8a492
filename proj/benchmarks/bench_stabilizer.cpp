#include <benchmark/benchmark.h>

#include "resilience/stabilizer.hpp"

using namespace resilience;

static void BM_DecodeCycle(benchmark::State& state) {
  const auto code = steane_code();
  PerChannel eps;
  eps.x = eps.y = eps.z = 0.01;
  Rng rng(1);
  for (auto _ : state) {
    const auto e = sample_error(eps, code.n, rng);
    benchmark::DoNotOptimize(decode_cycle(code, e));
  }
}
BENCHMARK(BM_DecodeCycle);

static void BM_LogicalErrorRate(benchmark::State& state) {
  const auto code = steane_code();
  PerChannel eps;
  eps.x = eps.y = eps.z = 1e-3 / 3.0;
  const auto samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(logical_error_rate(code, eps, samples, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(samples));
}
BENCHMARK(BM_LogicalErrorRate)
    ->Unit(benchmark::kMillisecond)
    ->Arg(100'000)
    ->Arg(1'000'000);
