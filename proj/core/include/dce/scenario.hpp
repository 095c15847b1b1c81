#pragma once

#include <variant>

#include "dce/profile.hpp"

namespace dce {

/// Cavity bounded by two high potential barriers (finite m^2). The right
/// barrier starts at x = L; the left barrier ends at x = delta(t), with
/// delta(0) = 0. Natural units hbar = c = 1.
struct WallScenario {
  double length = 1.0;
  double m2 = 1.0e6;
  double eps0 = 1.0;
  double eps1 = 1.0;
  double kPerp = 0.0;
  /// Upper bound of the wall displacement, delta1 << L.
  double delta1 = 0.0;
  TimeProfile displacement{};

  void validate() const;
};

/// Cavity with Dirichlet ends and a semiconductor slab [l, l + delta] whose
/// permittivity eps1(t) and conduction term m_p^2(t) = n_e e^2 / m_* are
/// switched by laser pulses.
struct PlasmaScenario {
  double length = 1.0;
  double slabPosition = 0.5;
  double slabThickness = 1.0e-3;
  double eps0 = 1.0;
  double kPerp = 0.0;
  TimeProfile eps1{constantProfile(1.0)};
  TimeProfile mp2{};

  void validate() const;
  /// omega_p = (m_p^2 / eps1)^{1/2}.
  double plasmaFrequency(double t) const;
};

/// m_p^2 = n_e e^2 / m_*, applied to every parameter of a density profile.
ProfileSpec mp2FromElectronDensity(const ProfileSpec& density, double charge, double effectiveMass);

using Scenario = std::variant<WallScenario, PlasmaScenario>;

void validate(const Scenario& scenario);
double cavityLength(const Scenario& scenario);
double transverseMomentum(const Scenario& scenario);
/// Copy of the scenario with every drive-locked profile bound to `omega`.
Scenario rebound(const Scenario& scenario, double omega);
/// True when no material parameter changes in time.
bool isStatic(const Scenario& scenario);

}  // namespace dce
