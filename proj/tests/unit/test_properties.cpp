#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dce/couplings.hpp"
#include "dce/error.hpp"
#include "dce/evolution.hpp"
#include "dce/modes.hpp"
#include "dce/rwa.hpp"
#include "generators.hpp"

using namespace dce;
using dce::testing::Gen;

namespace {
constexpr int kCases = 25;
}

TEST(Property, PlasmaModesAreOrthonormal) {
  for (int seed = 1; seed <= kCases; ++seed) {
    Gen g(seed);
    PlasmaScenario p = g.plasma();
    auto modes = solveModes(p, 5);
    auto m = orthonormalityCheck(modes, p);
    for (std::size_t a = 0; a < 5; ++a) {
      for (std::size_t b = 0; b < 5; ++b) ASSERT_LT(m[a][b], 1e-6) << "seed " << seed;
    }
    for (std::size_t i = 1; i < modes.size(); ++i) ASSERT_LT(modes[i - 1].omega0, modes[i].omega0);
  }
}

TEST(Property, WallModesAreOrthonormal) {
  for (int seed = 1; seed <= kCases; ++seed) {
    Gen g(1000 + seed);
    WallScenario w = g.wall();
    // Stay below the bound-state limit of the barrier.
    double kMax = boundStateLimit(initialMedium(w));
    std::size_t n = std::min<std::size_t>(5, std::size_t(0.8 * kMax * w.length / std::numbers::pi));
    if (n == 0) continue;
    auto modes = solveModes(w, n);
    auto m = orthonormalityCheck(modes, w);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) ASSERT_LT(m[a][b], 1e-6) << "seed " << 1000 + seed;
    }
  }
}

TEST(Property, EvolutionPreservesTheInvariant) {
  for (int seed = 1; seed <= kCases; ++seed) {
    Gen g(2000 + seed);
    double w0 = g.uniform(0.5, 2.0);
    double dw = w0 * g.logUniform(1e-3, 5e-2);
    double Omega = 2.0 * (w0 + dw) * (1.0 + g.uniform(-0.02, 0.02));
    CouplingSet c = syntheticDrive(w0, dw, Omega);
    EvolutionOptions o;
    o.drivePeriod = 2.0 * std::numbers::pi / Omega;
    double tEnd = g.uniform(1.0, 3.0) / (0.25 * dw);  // chi t up to ~3
    Trajectory tr = integrateMaster(c, 0, tEnd, o);
    ASSERT_LT(tr.maxResidual, 1e-8 * (1.0 + photonNumber(tr.final()))) << "seed " << 2000 + seed;
    for (const auto& s : tr.states) {
      ASSERT_GE(photonNumber(s), 0.0);
      ASSERT_NEAR(invariantResidual(s), 0.0, 1e-8 * (1.0 + photonNumber(s)));
    }
  }
}

TEST(Property, RwaIsNonNegativeAndContinuousAcrossBranches) {
  for (int seed = 1; seed <= 200; ++seed) {
    Gen g(3000 + seed);
    double c = g.logUniform(1e-4, 1e-1);
    double t = g.uniform(0.0, 5.0) / c;
    double chi2 = c * c * g.uniform(-1.0, 1.0);
    DriveSpec d = DriveSpec::fromDetuning(1.0, 0.0, std::complex<double>(0.0, 0.5 * c),
                                          std::sqrt(std::max(0.0, c * c - chi2)));
    RwaSolution r = rwaSolve(d);
    ASSERT_GE(r.nGamma(t), 0.0);
    double tiny = 1e-10 * c * c;
    double crit = rwaCritical(c, t);
    ASSERT_NEAR(rwaHyperbolic(c, tiny, t), crit, 1e-6 * (1.0 + crit));
    ASSERT_NEAR(rwaOscillatory(c, -tiny, t), crit, 1e-6 * (1.0 + crit));
  }
}

TEST(Property, PlasmaQuadratureIsLinearInTheDrive) {
  for (int seed = 1; seed <= 10; ++seed) {
    Gen g(4000 + seed);
    PlasmaScenario p = g.plasma();
    p.eps1 = TimeProfile(constantProfile(p.eps0));
    double s = g.uniform(1.5, 4.0);
    PlasmaScenario q = p;
    ProfileSpec spec = p.mp2.spec();
    spec.peak *= s;
    q.mp2 = TimeProfile(spec);
    double omega = 2.0 * std::numbers::pi;
    p = std::get<PlasmaScenario>(rebound(Scenario{p}, omega));
    q = std::get<PlasmaScenario>(rebound(Scenario{q}, omega));
    auto modes = solveModes(p, 1);
    std::vector<double> times{0.1, 0.25, 0.4};
    CouplingSet a = couplingsByQuadrature(modes, materialOf(p), times);
    CouplingSet b = couplingsByQuadrature(modes, materialOf(q), times);
    for (double t : times) {
      double ra = a.deltaOmegaAt(0, t);
      ASSERT_NEAR(b.deltaOmegaAt(0, t), s * ra, 1e-8 * s * std::abs(ra)) << "seed " << 4000 + seed;
    }
  }
}
