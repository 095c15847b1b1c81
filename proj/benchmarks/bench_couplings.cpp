#include <benchmark/benchmark.h>

#include <numbers>

#include "dce/couplings.hpp"
#include "dce/material.hpp"
#include "dce/modes.hpp"

using namespace dce;

namespace {

constexpr double kPi = std::numbers::pi;

WallScenario wall() {
  WallScenario w;
  w.m2 = 1e4;
  w.delta1 = 1e-4;
  w.displacement = TimeProfile(sinusoidalProfile(0.0, 1e-4), 2.0 * kPi);
  return w;
}

}  // namespace

static void BM_WallPairIntegral(benchmark::State& state) {
  WallScenario w = wall();
  Mode m = solveModes(w, 1).front();
  MaterialProfile mat = materialOf(w);
  double t = 0.0;
  for (auto _ : state) {
    t = t < 1.0 ? t + 0.01 : 0.01;
    benchmark::DoNotOptimize(gM(m, m, mat, t));
  }
}
BENCHMARK(BM_WallPairIntegral);

static void BM_PlasmaGrid(benchmark::State& state) {
  PlasmaScenario p;
  p.slabPosition = 0.3;
  p.slabThickness = 1e-3;
  p.mp2 = TimeProfile(sinusoidalProfile(0.0, 100.0), 2.0 * kPi);
  auto modes = solveModes(p, std::size_t(state.range(0)));
  std::vector<double> grid = samplingGrid(1.0, 1.0, 64, {});
  for (auto _ : state) {
    benchmark::DoNotOptimize(couplingsByQuadrature(modes, materialOf(p), grid, true));
  }
}
BENCHMARK(BM_PlasmaGrid)->Arg(1)->Arg(3);

static void BM_SampleQuadratureSet(benchmark::State& state) {
  WallScenario w = wall();
  auto modes = solveModes(w, 1);
  std::vector<double> grid = samplingGrid(1.0, 1.0, 64, {});
  CouplingSet c = couplingsByQuadrature(modes, materialOf(w), grid);
  CouplingSample s;
  s.resize(1);
  double t = 0.0;
  for (auto _ : state) {
    t = t < 1.0 ? t + 1e-3 : 1e-3;
    c.sample(t, s);
    benchmark::DoNotOptimize(s.g[0]);
  }
}
BENCHMARK(BM_SampleQuadratureSet);

BENCHMARK_MAIN();
