#include <benchmark/benchmark.h>

#include "dce/modes.hpp"

using namespace dce;

static void BM_PlasmaModes(benchmark::State& state) {
  PlasmaScenario p;
  p.slabPosition = 0.3;
  p.slabThickness = 0.05;
  p.eps1 = TimeProfile(constantProfile(6.0));
  for (auto _ : state) benchmark::DoNotOptimize(solveModes(p, std::size_t(state.range(0))));
}
BENCHMARK(BM_PlasmaModes)->Arg(1)->Arg(5)->Arg(20);

static void BM_WallModes(benchmark::State& state) {
  WallScenario w;
  w.m2 = 1e6;
  w.eps1 = 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(solveModes(w, std::size_t(state.range(0))));
}
BENCHMARK(BM_WallModes)->Arg(1)->Arg(5);

BENCHMARK_MAIN();
