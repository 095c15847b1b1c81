#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dce/error.hpp"
#include "dce/modes.hpp"
#include "fd_oracle.hpp"

using namespace dce;

namespace {

constexpr double kPi = std::numbers::pi;

// kL + 2 atan(k / kappa(k)) = n pi for a well between two identical barriers.
double wallOracleK(const WallScenario& w, int n) {
  auto kappa = [&](double k) {
    double omega2 = (k * k + w.kPerp * w.kPerp) / w.eps0;
    return std::sqrt(w.kPerp * w.kPerp + w.m2 - w.eps1 * omega2);
  };
  auto f = [&](double k) { return k * w.length + 2.0 * std::atan(k / kappa(k)) - n * kPi; };
  double lo = (n - 1) * kPi / w.length + 1e-9;
  double hi = n * kPi / w.length;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

PlasmaScenario dielectricSlab() {
  PlasmaScenario p;
  p.length = 1.0;
  p.slabPosition = 0.3;
  p.slabThickness = 0.05;
  p.eps0 = 1.0;
  p.eps1 = TimeProfile(constantProfile(6.0));
  return p;
}

}  // namespace

TEST(Modes, EmptyCavityHasSineModes) {
  PlasmaScenario p;
  p.length = 2.0;
  p.eps0 = 1.5;
  p.kPerp = 0.7;
  p.eps1 = TimeProfile(constantProfile(1.5));
  auto modes = solveModes(p, 4);
  ASSERT_EQ(modes.size(), 4u);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    double k = double(i + 1) * kPi / p.length;
    EXPECT_NEAR(modes[i].k, k, 1e-11 * k);
    EXPECT_NEAR(modes[i].omega0, std::sqrt((k * k + 0.49) / 1.5), 1e-11);
    EXPECT_EQ(modes[i].index, int(i) + 1);
  }
}

TEST(Modes, DielectricSlabMatchesFiniteElementOracle) {
  PlasmaScenario p = dielectricSlab();
  auto modes = solveModes(p, 3);
  dce::testing::FdPlasmaOracle fd(p, 20000);
  for (std::size_t n = 1; n <= 3; ++n) {
    EXPECT_NEAR(modes[n - 1].k, fd.k(n), 1e-5 * fd.k(n)) << "mode " << n;
  }
}

TEST(Modes, WallMatchesTranscendentalOracle) {
  WallScenario w;
  w.length = 1.0;
  w.m2 = 1e4;
  w.eps0 = 1.0;
  w.eps1 = 2.0;
  w.kPerp = 0.5;
  auto modes = solveModes(w, 3);
  for (int n = 1; n <= 3; ++n) {
    double k = wallOracleK(w, n);
    EXPECT_NEAR(modes[n - 1].k, k, 1e-10 * k) << "mode " << n;
  }
}

TEST(Modes, WallPhaseShiftIsInverseBarrierMass) {
  WallScenario w;
  w.m2 = 1e8;
  auto modes = solveModes(w, 1);
  EXPECT_NEAR(modes[0].xi, 1e-4, 1e-7);
  EXPECT_NEAR(modes[0].kPrime.imag(), 1e4, 1.0);
  EXPECT_NEAR(std::abs(modes[0].amps.C / modes[0].amps.A), modes[0].k * 1e-4, 1e-6);
}

TEST(Modes, NormalisationAndOrthogonality) {
  PlasmaScenario p = dielectricSlab();
  auto modes = solveModes(p, 5);
  auto m = orthonormalityCheck(modes, p);
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t b = 0; b < 5; ++b) EXPECT_LT(m[a][b], 1e-10) << a << "," << b;
  }
  for (const Mode& mode : modes) EXPECT_LT(mode.normResidual, 1e-10);
}

TEST(Modes, ContinuousAcrossSlabFaces) {
  PlasmaScenario p = dielectricSlab();
  auto modes = solveModes(p, 3);
  for (const Mode& m : modes) {
    for (double x : {p.slabPosition, p.slabPosition + p.slabThickness}) {
      double h = 1e-9;
      EXPECT_NEAR(m.value(x - h), m.value(x + h), 1e-7 * std::abs(m.amps.A));
      EXPECT_NEAR(m.derivative(x - h), m.derivative(x + h), 1e-6 * std::abs(m.amps.A) * m.k);
    }
  }
}

TEST(Modes, PiecewiseAmplitudesReproduceTheProfile) {
  PlasmaScenario p = dielectricSlab();
  Mode m = solveModes(p, 1).front();
  double x = 0.1;
  EXPECT_NEAR(m.value(x), m.amps.D * std::sin(m.k * x), 1e-12);
  double r = 0.8;
  EXPECT_NEAR(m.value(r), m.amps.A * std::sin(m.k * (r - p.slabThickness + m.xi)), 1e-12);
  double s = p.slabPosition + 0.5 * p.slabThickness;
  std::complex<double> i{0.0, 1.0};
  std::complex<double> inside = m.amps.B * std::exp(i * m.kPrime * s) + m.amps.C * std::exp(-i * m.kPrime * s);
  EXPECT_NEAR(inside.real(), m.value(s), 1e-10);
  EXPECT_NEAR(inside.imag(), 0.0, 1e-10);
}

TEST(Modes, DeterminantVanishesAtModes) {
  PlasmaScenario p = dielectricSlab();
  auto modes = solveModes(p, 2);
  for (const Mode& m : modes) {
    double d = matchingDeterminant(Scenario{p}, m.k);
    double scale = std::abs(matchingDeterminant(Scenario{p}, 1.01 * m.k));
    EXPECT_LT(std::abs(d), 1e-9 * scale);
  }
}

TEST(Modes, SortedByFrequency) {
  WallScenario w;
  w.m2 = 1e6;
  auto modes = solveModes(w, 5);
  for (std::size_t i = 1; i < modes.size(); ++i) EXPECT_LT(modes[i - 1].omega0, modes[i].omega0);
}

TEST(Modes, ShallowBarrierRunsOutOfBoundStates) {
  WallScenario w;
  w.m2 = 50.0;  // roughly two bound states
  EXPECT_THROW(solveModes(w, 6), RootFindingError);
}

TEST(Modes, EvaluationOutsideCavityThrows) {
  PlasmaScenario p;
  Mode m = solveModes(p, 1).front();
  EXPECT_THROW(evalMode(m, p, 1.5), DomainError);
  EXPECT_NO_THROW(evalMode(m, p, 0.5));
}

TEST(Modes, BoundStateLimit) {
  WallScenario w;
  w.m2 = 400.0;
  double k = boundStateLimit(initialMedium(w));
  EXPECT_NEAR(k, 20.0, 1e-9);
  EXPECT_TRUE(std::isinf(boundStateLimit(initialMedium(PlasmaScenario{}))));
}
