#include <benchmark/benchmark.h>

#include "resilience/probability.hpp"

using namespace resilience;

static void BM_CorrectionPairSum(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto c = power_law_correlator(0.75, 1.0);
  GridSpec grid;
  grid.n_cycles = side;
  grid.n_qubits = side;
  grid.comp_dim = 1;
  grid.spacing = 1.0;
  PairKernel kernel = [&](std::span<const double> dx, double dt) {
    return pair_correlator_F(c, 0.1, 1.0, 0.01, dx, dt);
  };
  for (auto _ : state) benchmark::DoNotOptimize(correction_pair_sum(grid, kernel));
  state.SetComplexityN(grid.cells());
}
BENCHMARK(BM_CorrectionPairSum)
    ->Unit(benchmark::kMillisecond)
    ->RangeMultiplier(2)
    ->Range(32, 256)
    ->Complexity(benchmark::oN);

static void BM_ScalingScan(benchmark::State& state) {
  PerChannel eps;
  eps.z = 0.01;
  ScanSpec spec;
  spec.correlator = power_law_correlator(0.75, 1.0);
  spec.lambda_star = 0.1;
  spec.rates = make_error_rates(eps, PerChannel{});
  spec.sizes = {16, 32, 64, 128};
  for (auto _ : state) benchmark::DoNotOptimize(scaling_scan(spec));
}
BENCHMARK(BM_ScalingScan)->Unit(benchmark::kMillisecond);
