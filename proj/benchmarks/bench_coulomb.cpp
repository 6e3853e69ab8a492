#include <benchmark/benchmark.h>

#include "resilience/coulombgas.hpp"

using namespace resilience;

static void BM_MetropolisSweeps(benchmark::State& state) {
  LatticeSpec spec;
  spec.side = static_cast<int>(state.range(0));
  spec.coupling = 4.0;
  spec.fugacity = 0.2;
  McOptions opt;
  opt.burn_in = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(metropolis_run(spec, 200, 1, opt));
  state.SetItemsProcessed(state.iterations() * 200 * spec.sites());
}
BENCHMARK(BM_MetropolisSweeps)->Unit(benchmark::kMillisecond)->Arg(4)->Arg(8)->Arg(16);

static void BM_ExactPartition(benchmark::State& state) {
  LatticeSpec spec;
  spec.side = static_cast<int>(state.range(0));
  spec.coupling = 4.0;
  spec.fugacity = 0.2;
  for (auto _ : state) benchmark::DoNotOptimize(exact_partition(spec, 2));
}
BENCHMARK(BM_ExactPartition)->Unit(benchmark::kMillisecond)->Arg(4)->Arg(5)->Arg(6);
