#include <benchmark/benchmark.h>

#include <numbers>

#include "dce/couplings.hpp"
#include "dce/evolution.hpp"
#include "dce/experiments.hpp"

using namespace dce;

static void BM_SyntheticResonance(benchmark::State& state) {
  double dw = 0.01;
  double Omega = 2.0 * (1.0 + dw);
  CouplingSet c = syntheticDrive(1.0, dw, Omega);
  EvolutionOptions o;
  o.drivePeriod = 2.0 * std::numbers::pi / Omega;
  double tEnd = double(state.range(0)) * o.drivePeriod;
  for (auto _ : state) benchmark::DoNotOptimize(integrateMaster(c, 0, tEnd, o));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SyntheticResonance)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_PlasmaPulseTrain(benchmark::State& state) {
  PlasmaScenario p;
  p.slabPosition = 0.5;
  p.slabThickness = 1e-3;
  p.mp2 = TimeProfile(raisedCosineTrainProfile(0.0, 100.0 * std::numbers::pi * std::numbers::pi, 1.0));
  Experiment e;
  e.scenario = Scenario{p};
  e.drive.nPulse = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(runExperiment(e));
}
BENCHMARK(BM_PlasmaPulseTrain)->Arg(66)->Unit(benchmark::kMillisecond);

static void BM_Multimode(benchmark::State& state) {
  PlasmaScenario p;
  p.slabPosition = 0.3;
  p.slabThickness = 1e-3;
  p.mp2 = TimeProfile(raisedCosineTrainProfile(0.0, 100.0 * std::numbers::pi * std::numbers::pi, 1.0));
  Experiment e;
  e.scenario = Scenario{p};
  e.multimode = true;
  e.nModes = std::size_t(state.range(0));
  e.drive.nPulse = 20;
  for (auto _ : state) benchmark::DoNotOptimize(runMultimode(e));
}
BENCHMARK(BM_Multimode)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
