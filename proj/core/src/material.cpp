#include "dce/material.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dce/error.hpp"

namespace dce {

MaterialProfile::MaterialProfile(Scenario scenario) : scenario_(std::move(scenario)) {
  dce::validate(scenario_);
}

MaterialProfile materialOf(const Scenario& scenario) { return MaterialProfile(scenario); }

Interval MaterialProfile::domain() const {
  if (std::holds_alternative<WallScenario>(scenario_)) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {-inf, inf};
  }
  return {0.0, std::get<PlasmaScenario>(scenario_).length};
}

void MaterialProfile::checkDomain(double x) const {
  Interval d = domain();
  if (!(x >= d.lo && x <= d.hi)) {
    throw DomainError("position x = " + std::to_string(x) + " lies outside the cavity domain");
  }
}

double MaterialProfile::wallDisplacement(double t) const {
  const auto& wall = std::get<WallScenario>(scenario_);
  double d = wall.displacement(t);
  if (d < 0.0 || d > wall.delta1) {
    throw ScenarioError("wall displacement delta(t) = " + std::to_string(d) +
                        " at t = " + std::to_string(t) + " lies outside [0, delta1]");
  }
  return d;
}

double MaterialProfile::eps(double x, double t) const {
  checkDomain(x);
  if (const auto* wall = std::get_if<WallScenario>(&scenario_)) {
    double left = t == 0.0 ? 0.0 : wallDisplacement(t);
    return (x < left || x > wall->length) ? wall->eps1 : wall->eps0;
  }
  const auto& plasma = std::get<PlasmaScenario>(scenario_);
  bool inSlab = x >= plasma.slabPosition && x <= plasma.slabPosition + plasma.slabThickness;
  if (!inSlab) return plasma.eps0;
  double value = plasma.eps1(t);
  if (!(value > 0.0)) {
    throw ScenarioError("slab permittivity must stay positive (t = " + std::to_string(t) + ")");
  }
  return value;
}

double MaterialProfile::m2(double x, double t) const {
  checkDomain(x);
  if (const auto* wall = std::get_if<WallScenario>(&scenario_)) {
    double left = t == 0.0 ? 0.0 : wallDisplacement(t);
    return (x < left || x > wall->length) ? wall->m2 : 0.0;
  }
  const auto& plasma = std::get<PlasmaScenario>(scenario_);
  bool inSlab = x >= plasma.slabPosition && x <= plasma.slabPosition + plasma.slabThickness;
  return inSlab ? plasma.mp2(t) : 0.0;
}

double MaterialProfile::invEpsDelta(double x, double t) const {
  double e0 = eps(x, 0.0);
  double et = eps(x, t);
  if (e0 == et) return 0.0;
  return (e0 - et) / (et * e0);
}

double MaterialProfile::m2Delta(double x, double t) const {
  return m2(x, t) - m2(x, 0.0);
}

std::vector<Interval> MaterialProfile::deltaRegion(double t) const {
  if (std::holds_alternative<WallScenario>(scenario_)) {
    double d = t == 0.0 ? 0.0 : wallDisplacement(t);
    if (d > 0.0) return {Interval{0.0, d}};
    return {};
  }
  const auto& plasma = std::get<PlasmaScenario>(scenario_);
  bool changed = plasma.eps1(t) != plasma.eps1(0.0) || plasma.mp2(t) != plasma.mp2(0.0);
  if (!changed) return {};
  return {Interval{plasma.slabPosition, plasma.slabPosition + plasma.slabThickness}};
}

}  // namespace dce
