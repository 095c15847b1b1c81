#pragma once

#include <cstddef>
#include <vector>

#include "dce/scenario.hpp"

namespace dce::testing {

/// Lumped-mass P1 finite elements for -f'' + (kPerp^2 + m^2) f = w^2 eps f on
/// [0, L] with Dirichlet ends, the t = 0 plasma profile, and mesh nodes on
/// the slab faces. Eigenvalues by Sturm-sequence bisection.
class FdPlasmaOracle {
 public:
  FdPlasmaOracle(const PlasmaScenario& scenario, std::size_t intervals);

  /// n-th (1-based) eigenfrequency omega.
  double omega(std::size_t n) const;
  /// Vacuum wavenumber k with eps0 omega^2 = k^2 + kPerp^2.
  double k(std::size_t n) const;

  std::size_t unknowns() const { return diag_.size(); }

 private:
  /// Number of eigenvalues below lambda.
  std::size_t countBelow(double lambda) const;

  double eps0_;
  double kPerp_;
  // Symmetric tridiagonal M^{-1/2} K M^{-1/2}.
  std::vector<double> diag_;
  std::vector<double> off_;
};

}  // namespace dce::testing
