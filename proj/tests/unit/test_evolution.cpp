#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "dce/couplings.hpp"
#include "dce/error.hpp"
#include "dce/evolution.hpp"
#include "dce/rwa.hpp"

using namespace dce;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

CouplingSet constantCoefficients(double omega, cd g) {
  auto sampler = [=](double, CouplingSample& out) {
    out.omega[0] = omega;
    out.mu[0] = 0.0;
    out.g[0] = g;
  };
  return CouplingSet({omega}, Provenance::syntheticDrive, sampler);
}

// A(t), B(t) of A' = -i w A + 2 g B, B' = i w B + 2 g* A from A = 1, B = 0.
std::pair<cd, cd> constantOracle(double w, cd g, double t) {
  cd s = std::sqrt(cd(4.0 * std::norm(g) - w * w, 0.0));
  cd ch = std::cosh(s * t);
  cd sh = std::abs(s) > 0.0 ? std::sinh(s * t) / s : cd(t, 0.0);
  return {ch - cd(0.0, w) * sh, 2.0 * std::conj(g) * sh};
}

}  // namespace

TEST(Squeeze, RoundTrip) {
  SqueezeDecomposition d{0.7, 0.3, -1.1, {}};
  BogoliubovState s = fromSqueeze(d);
  SqueezeDecomposition e = squeezeOf(s);
  EXPECT_NEAR(e.r, 0.7, 1e-14);
  EXPECT_NEAR(e.phiA, 0.3, 1e-14);
  EXPECT_NEAR(e.phiB, -1.1, 1e-14);
  EXPECT_NEAR(std::abs(e.lambda), 0.7, 1e-14);
  EXPECT_NEAR(std::arg(e.lambda), 1.4, 1e-14);
  EXPECT_NEAR(invariantResidual(s), 0.0, 1e-14);
  EXPECT_NEAR(photonNumber(s), std::sinh(0.7) * std::sinh(0.7), 1e-14);
}

TEST(Master, ConstantCouplingHyperbolic) {
  double w = 0.3;
  cd g{0.2, 0.1};
  CouplingSet c = constantCoefficients(w, g);
  EvolutionOptions o;
  o.outputTimes = {0.0, 1.0, 5.0, 10.0};
  Trajectory tr = integrateMaster(c, 0, 10.0, o);
  for (const auto& s : tr.states) {
    auto [a, b] = constantOracle(w, g, s.t);
    EXPECT_NEAR(std::abs(s.A - a), 0.0, 1e-8 * std::abs(a)) << s.t;
    EXPECT_NEAR(std::abs(s.B - b), 0.0, 1e-8 * std::abs(a)) << s.t;
  }
  EXPECT_LT(tr.maxResidual, 1e-8);
}

TEST(Master, ConstantCouplingOscillatory) {
  double w = 1.0;
  cd g{0.0, -0.1};
  CouplingSet c = constantCoefficients(w, g);
  EvolutionOptions o;
  o.outputTimes = {3.0, 30.0};
  Trajectory tr = integrateMaster(c, 0, 30.0, o);
  for (const auto& s : tr.states) {
    auto [a, b] = constantOracle(w, g, s.t);
    EXPECT_NEAR(std::abs(s.A - a), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(s.B - b), 0.0, 1e-8);
  }
}

TEST(Master, ZeroCouplingIsPurePhase) {
  CouplingSet c = constantCoefficients(2.0, 0.0);
  EvolutionOptions o;
  o.outputTimes = {1.5};
  Trajectory tr = integrateMaster(c, 0, 1.5, o);
  const auto& s = tr.final();
  EXPECT_NEAR(std::abs(s.A - std::exp(cd(0.0, -3.0))), 0.0, 1e-10);
  EXPECT_EQ(photonNumber(s), 0.0);
  EXPECT_NEAR(s.phiA, -3.0, 1e-10);  // unwrapped
  EXPECT_NEAR(s.K, -1.5, 1e-10);     // phi_A + int w / 2
}

TEST(Master, TracksPhaseAcrossManyTurns) {
  CouplingSet c = constantCoefficients(1.0, 0.0);
  EvolutionOptions o;
  o.outputTimes = {100.0};
  Trajectory tr = integrateMaster(c, 0, 100.0, o);
  EXPECT_NEAR(tr.final().phiA, -100.0, 1e-8);
}

TEST(Master, ResonantSyntheticDriveFollowsRwa) {
  double dw = 0.01;
  double Omega = 2.0 * (1.0 + dw);
  CouplingSet c = syntheticDrive(1.0, dw, Omega);
  EvolutionOptions o;
  o.drivePeriod = 2.0 * kPi / Omega;
  Trajectory tr = integrateMaster(c, 0, 400.0, o);
  DriveSpec d = DriveSpec::fromOmega(1.0, dw, cd(0.0, 0.25 * dw), Omega);
  RwaSolution rwa = rwaSolve(d);
  auto times = tr.times();
  auto avg = periodAverage(times, tr.photonNumbers(), o.drivePeriod);
  for (std::size_t i = 0; i < avg.times.size(); i += 50) {
    double t = avg.times[i];
    if (rwa.chi * t < 0.5) continue;
    EXPECT_NEAR(avg.values[i], rwa.nGamma(t), 0.1 * rwa.nGamma(t)) << t;
  }
}

TEST(Master, DriftBeyondToleranceAborts) {
  // Loose steps against an absurdly tight drift budget.
  auto sampler = [](double, CouplingSample& out) {
    out.omega[0] = 1.2;
    out.mu[0] = 0.2;
    out.g[0] = cd(0.0, -0.1);
  };
  CouplingSet c({1.0}, Provenance::syntheticDrive, sampler);
  EvolutionOptions o;
  o.ode.relTol = 1e-3;
  o.driftFactor = 1e-9;
  o.outputTimes = {1.0e3};
  EXPECT_THROW(integrateMaster(c, 0, 1.0e3, o), IntegrationError);
}

TEST(Master, ShortCouplingRangeIsRejected) {
  std::vector<double> times{0.0, 1.0, 2.0, 3.0};
  auto sampler = [](double, CouplingSample& out) {
    out.omega[0] = 1.0;
    out.mu[0] = 0.0;
    out.g[0] = 0.0;
  };
  CouplingSet c({1.0}, Provenance::quadrature, sampler, 0.0, 3.0);
  EXPECT_THROW(integrateMaster(c, 0, 5.0), Error);
}

TEST(Master, ProjectionKeepsInvariantExact) {
  double dw = 0.02;
  double Omega = 2.0 * (1.0 + dw);
  CouplingSet c = syntheticDrive(1.0, dw, Omega);
  EvolutionOptions o;
  o.drivePeriod = 2.0 * kPi / Omega;
  o.symplecticProjection = true;
  o.ode.relTol = 1e-8;
  Trajectory tr = integrateMaster(c, 0, 50.0 * o.drivePeriod, o);
  EvolutionOptions plain = o;
  plain.symplecticProjection = false;
  Trajectory ref = integrateMaster(c, 0, 50.0 * o.drivePeriod, plain);
  EXPECT_NEAR(photonNumber(tr.final()), photonNumber(ref.final()), 1e-5 * photonNumber(ref.final()));
}

TEST(Multimode, DiagonalCouplingsReduceToSingleMode) {
  auto sampler = [](double t, CouplingSample& out) {
    double d1 = 0.01 * (1.0 - std::cos(2.02 * t));
    out.omega = {1.0 + d1, 1.7};
    out.mu = {d1, 0.0, 0.0, 0.0};
    out.g = {cd(0.0, -0.5 * d1), 0.0, 0.0, 0.0};
  };
  CouplingSet c({1.0, 1.7}, Provenance::syntheticDrive, sampler);
  EvolutionOptions o;
  o.outputTimes = {0.0, 50.0, 100.0};
  MultimodeTrajectory mm = integrateMultimode(c, 100.0, o);
  Trajectory single = integrateMaster(c.restrict({0}), 0, 100.0, o);
  for (std::size_t i = 0; i < mm.states.size(); ++i) {
    auto n = mm.states[i].photonNumbers();
    EXPECT_NEAR(n[0], photonNumber(single.states[i]), 1e-8);
    EXPECT_NEAR(n[1], 0.0, 1e-14);
    EXPECT_LT(mm.states[i].symplecticResidual(), 1e-8);
  }
}

TEST(Multimode, FrequencyConversionConservesPhotonsFromVacuum) {
  // A pure beam-splitter coupling (mu only) cannot create photons.
  auto sampler = [](double t, CouplingSample& out) {
    double m = 0.05 * std::cos(0.7 * t);
    out.omega = {1.0, 1.7};
    out.mu = {0.0, m, m, 0.0};
    out.g = {0.0, 0.0, 0.0, 0.0};
  };
  CouplingSet c({1.0, 1.7}, Provenance::syntheticDrive, sampler);
  EvolutionOptions o;
  o.outputTimes = {30.0};
  MultimodeTrajectory mm = integrateMultimode(c, 30.0, o);
  auto n = mm.final().photonNumbers();
  EXPECT_NEAR(n[0] + n[1], 0.0, 1e-16);
  EXPECT_LT(mm.final().symplecticResidual(), 1e-9);
}

TEST(PeriodAverage, ConstantAndPureHarmonic) {
  std::vector<double> t, c, s;
  double T = 2.0;
  for (int i = 0; i <= 400; ++i) {
    t.push_back(0.05 * i);
    c.push_back(3.0);
    s.push_back(std::sin(2.0 * kPi * t.back() / T));
  }
  auto ac = periodAverage(t, c, T);
  auto as = periodAverage(t, s, T);
  ASSERT_FALSE(ac.times.empty());
  EXPECT_NEAR(ac.times.front(), 1.0, 1e-12);
  EXPECT_NEAR(ac.times.back(), 19.0, 1e-12);
  for (double v : ac.values) EXPECT_NEAR(v, 3.0, 1e-13);
  for (double v : as.values) EXPECT_NEAR(v, 0.0, 2e-3);
}

TEST(Rwa, BranchesAndContinuity) {
  DriveSpec d = DriveSpec::fromDetuning(1.0, 0.01, cd(0.0, 0.0025), 0.0);
  RwaSolution r = rwaSolve(d, 100.0);
  EXPECT_EQ(r.branch, RwaBranch::hyperbolic);
  EXPECT_NEAR(r.chi, 0.005, 1e-15);
  EXPECT_NEAR(r.nGamma(100.0), std::pow(std::sinh(0.5), 2), 1e-14);

  DriveSpec off = DriveSpec::fromOmega(1.0, 0.01, cd(0.0, 0.0025), 2.0);
  EXPECT_NEAR(off.Delta, -0.01, 1e-15);
  RwaSolution o = rwaSolve(off);
  EXPECT_EQ(o.branch, RwaBranch::oscillatory);
  EXPECT_TRUE(o.imaginary());
  double chi = std::sqrt(1e-4 - 25e-6);
  EXPECT_NEAR(o.nGamma(50.0), 25e-6 / (chi * chi) * std::pow(std::sin(chi * 50.0), 2), 1e-14);

  double c = 0.01;
  double t = 30.0;
  double eps = 1e-12;
  EXPECT_NEAR(rwaHyperbolic(c, eps, t), rwaCritical(c, t), 1e-9 * rwaCritical(c, t));
  EXPECT_NEAR(rwaOscillatory(c, -eps, t), rwaCritical(c, t), 1e-9 * rwaCritical(c, t));
}

TEST(Rwa, DriveSpecIdentity) {
  DriveSpec d = DriveSpec::fromDetuning(2.0, 0.03, cd(0.01, 0.0), 0.004, 10);
  EXPECT_NEAR(d.Omega, 2.0 * (2.0 + 0.03 + 0.004), 1e-15);
  EXPECT_NEAR(d.T, 2.0 * kPi / d.Omega, 1e-15);
  EXPECT_NEAR(d.duration(), 10.0 * d.T, 1e-14);
  EXPECT_NEAR(d.chiSquared(), 4e-4 - 16e-6, 1e-16);
  EXPECT_THROW(DriveSpec::fromOmega(1.0, 0.0, 0.0, -1.0), Error);
}
