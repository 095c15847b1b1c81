#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "dce/scenario.hpp"

namespace dce::testing {

/// Seeded source for the property tests. The seed is printed on failure.
class Gen {
 public:
  explicit Gen(std::uint32_t seed) : seed_(seed), rng_(seed) {}

  std::uint32_t seed() const { return seed_; }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double logUniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }
  std::mt19937& engine() { return rng_; }

  /// Thin slab somewhere inside (not touching) a cavity of random length.
  PlasmaScenario plasma() {
    PlasmaScenario p;
    p.length = logUniform(0.1, 10.0);
    p.slabThickness = p.length * logUniform(1e-4, 3e-2);
    p.slabPosition = p.length * uniform(0.05, 0.9);
    if (p.slabPosition + p.slabThickness > p.length) p.slabPosition = p.length - 2.0 * p.slabThickness;
    p.eps0 = uniform(1.0, 2.0);
    p.eps1 = TimeProfile(coin() ? constantProfile(p.eps0) : constantProfile(uniform(1.0, 12.0)));
    p.kPerp = coin() ? 0.0 : uniform(0.0, 3.0) / p.length;
    double w0 = std::numbers::pi / p.length;
    p.mp2 = TimeProfile(sinusoidalProfile(0.0, logUniform(1.0, 100.0) * p.eps0 * w0 * w0));
    return p;
  }

  /// Wall cavity with barrier m L in [30, 3000].
  WallScenario wall() {
    WallScenario w;
    w.length = logUniform(0.5, 5.0);
    double m = logUniform(30.0, 3000.0) / w.length;
    w.m2 = m * m;
    w.eps0 = uniform(1.0, 2.0);
    w.eps1 = coin() ? w.eps0 : uniform(1.0, 4.0);
    w.kPerp = coin() ? 0.0 : uniform(0.0, 2.0) / w.length;
    w.delta1 = w.length * logUniform(1e-5, 1e-3);
    w.displacement = TimeProfile(sinusoidalProfile(0.0, w.delta1));
    return w;
  }

 private:
  std::uint32_t seed_;
  std::mt19937 rng_;
};

}  // namespace dce::testing
