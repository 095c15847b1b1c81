#pragma once

#include <vector>

#include "dce/scenario.hpp"

namespace dce {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

/// Space-time material functions eps(x, t), m^2(x, t) of a scenario together
/// with their deviations from t = 0 and the region dV(t) where those
/// deviations are supported.
class MaterialProfile {
 public:
  explicit MaterialProfile(Scenario scenario);

  double eps(double x, double t) const;
  double m2(double x, double t) const;
  /// eps^{-1}(x, t) - eps^{-1}(x, 0), formed as (eps(x,0) - eps(x,t)) / (eps(x,t) eps(x,0)).
  double invEpsDelta(double x, double t) const;
  /// m^2(x, t) - m^2(x, 0).
  double m2Delta(double x, double t) const;
  /// Intervals dV(t) on which invEpsDelta or m2Delta can be non-zero.
  std::vector<Interval> deltaRegion(double t) const;

  const Scenario& scenario() const { return scenario_; }
  /// Domain on which eps/m2 may be evaluated.
  Interval domain() const;

 private:
  double wallDisplacement(double t) const;
  void checkDomain(double x) const;

  Scenario scenario_;
};

MaterialProfile materialOf(const Scenario& scenario);

}  // namespace dce
