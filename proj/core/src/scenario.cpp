#include "dce/scenario.hpp"

#include <cmath>
#include <string>

#include "dce/error.hpp"

namespace dce {

namespace {

void requirePositive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ScenarioError(std::string(name) + " must be positive and finite (got " +
                        std::to_string(value) + ")");
  }
}

}  // namespace

void WallScenario::validate() const {
  requirePositive(length, "length");
  requirePositive(m2, "m2");
  requirePositive(eps0, "eps0");
  requirePositive(eps1, "eps1");
  if (kPerp < 0.0) throw ScenarioError("kPerp must be non-negative");
  if (delta1 < 0.0 || !(delta1 < length)) {
    throw ScenarioError("delta1 must satisfy 0 <= delta1 < L");
  }
  if (displacement.initialValue() != 0.0) {
    throw ScenarioError("wall displacement must vanish at t = 0");
  }
  if (displacement.minValue() < 0.0 || displacement.maxValue() > delta1) {
    throw ScenarioError("wall displacement profile must stay within [0, delta1]");
  }
}

void PlasmaScenario::validate() const {
  requirePositive(length, "length");
  requirePositive(slabThickness, "slabThickness");
  requirePositive(eps0, "eps0");
  if (kPerp < 0.0) throw ScenarioError("kPerp must be non-negative");
  if (slabPosition < 0.0) throw ScenarioError("slabPosition must be non-negative");
  if (slabPosition + slabThickness > length * (1.0 + 1e-14)) {
    throw ScenarioError("slab must fit in the cavity: l + delta <= L");
  }
  if (!(slabThickness / length < 0.1)) {
    throw ScenarioError("slab must be thin: delta / L < 0.1");
  }
  if (!(eps1.minValue() > 0.0)) {
    throw ScenarioError("slab permittivity eps1(t) must stay positive");
  }
  if (mp2.initialValue() != 0.0) {
    throw ScenarioError("m_p^2(0) must vanish (laser off at t = 0)");
  }
  if (mp2.minValue() < 0.0) {
    throw ScenarioError("m_p^2(t) must be non-negative");
  }
}

double PlasmaScenario::plasmaFrequency(double t) const {
  return std::sqrt(mp2(t) / eps1(t));
}

ProfileSpec mp2FromElectronDensity(const ProfileSpec& density, double charge, double effectiveMass) {
  if (!(effectiveMass > 0.0)) throw ScenarioError("effective mass must be positive");
  double scale = charge * charge / effectiveMass;
  ProfileSpec out = density;
  out.base *= scale;
  out.peak *= scale;
  return out;
}

void validate(const Scenario& scenario) {
  std::visit([](const auto& s) { s.validate(); }, scenario);
}

double cavityLength(const Scenario& scenario) {
  return std::visit([](const auto& s) { return s.length; }, scenario);
}

double transverseMomentum(const Scenario& scenario) {
  return std::visit([](const auto& s) { return s.kPerp; }, scenario);
}

Scenario rebound(const Scenario& scenario, double omega) {
  if (const auto* wall = std::get_if<WallScenario>(&scenario)) {
    WallScenario out = *wall;
    out.displacement = wall->displacement.rebound(omega);
    return out;
  }
  PlasmaScenario out = std::get<PlasmaScenario>(scenario);
  out.eps1 = out.eps1.rebound(omega);
  out.mp2 = out.mp2.rebound(omega);
  return out;
}

bool isStatic(const Scenario& scenario) {
  if (const auto* wall = std::get_if<WallScenario>(&scenario)) {
    return wall->displacement.isStatic();
  }
  const auto& plasma = std::get<PlasmaScenario>(scenario);
  return plasma.eps1.isStatic() && plasma.mp2.isStatic();
}

}  // namespace dce
