#include "dce/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dce/error.hpp"

namespace dce {

std::string_view toString(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::constant: return "constant";
    case ProfileKind::sinusoidal: return "sinusoidal";
    case ProfileKind::raisedCosineTrain: return "raised_cosine_train";
    case ProfileKind::table: return "table";
  }
  return "unknown";
}

ProfileKind profileKindFromString(std::string_view name) {
  if (name == "constant") return ProfileKind::constant;
  if (name == "sinusoidal") return ProfileKind::sinusoidal;
  if (name == "raised_cosine_train") return ProfileKind::raisedCosineTrain;
  if (name == "table") return ProfileKind::table;
  throw ScenarioError("unknown profile kind '" + std::string(name) +
                      "' (expected constant, sinusoidal, raised_cosine_train or table)");
}

ProfileSpec constantProfile(double value) {
  ProfileSpec spec;
  spec.base = value;
  return spec;
}

ProfileSpec sinusoidalProfile(double base, double peak) {
  ProfileSpec spec;
  spec.kind = ProfileKind::sinusoidal;
  spec.base = base;
  spec.peak = peak;
  return spec;
}

ProfileSpec raisedCosineTrainProfile(double base, double peak, double duty) {
  ProfileSpec spec;
  spec.kind = ProfileKind::raisedCosineTrain;
  spec.base = base;
  spec.peak = peak;
  spec.duty = duty;
  return spec;
}

ProfileSpec rectangularTrainProfile(double base, double peak) {
  ProfileSpec spec;
  spec.kind = ProfileKind::table;
  spec.base = base;
  spec.peak = peak;
  spec.times = {0.0, 0.5, 0.5, 1.0};
  spec.values = {0.0, 0.0, 1.0, 1.0};
  spec.periodic = true;
  return spec;
}

namespace {

void validate(const ProfileSpec& spec) {
  if (!std::isfinite(spec.base) || !std::isfinite(spec.peak)) {
    throw ScenarioError("profile base/peak must be finite");
  }
  if (spec.omega < 0.0 || !std::isfinite(spec.omega)) {
    throw ScenarioError("profile omega must be a finite non-negative number");
  }
  if (spec.kind == ProfileKind::raisedCosineTrain && !(spec.duty > 0.0 && spec.duty <= 1.0)) {
    throw ScenarioError("raised_cosine_train duty must lie in (0, 1]");
  }
  if (spec.kind != ProfileKind::table) return;
  if (spec.times.size() < 2 || spec.times.size() != spec.values.size()) {
    throw ScenarioError("table profile needs >= 2 points and equally many times and values");
  }
  for (std::size_t i = 1; i < spec.times.size(); ++i) {
    if (spec.times[i] < spec.times[i - 1]) {
      throw ScenarioError("table profile times must be non-decreasing");
    }
    if (i >= 2 && spec.times[i] == spec.times[i - 2]) {
      throw ScenarioError("table profile allows at most two points per abscissa");
    }
  }
  if (spec.times.front() == spec.times[1] || spec.times.back() == spec.times[spec.times.size() - 2]) {
    throw ScenarioError("table profile cannot start or end with a jump");
  }
  if (spec.periodic && (spec.times.front() != 0.0 || spec.times.back() != 1.0)) {
    throw ScenarioError("periodic table profile phases must run from 0 to 1");
  }
}

double positiveFraction(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

}  // namespace

TimeProfile::TimeProfile(ProfileSpec spec, double driveOmega) : spec_(std::move(spec)) {
  validate(spec_);
  omega_ = spec_.omega > 0.0 ? spec_.omega : driveOmega;
}

TimeProfile TimeProfile::rebound(double driveOmega) const {
  return TimeProfile(spec_, driveOmega);
}

bool TimeProfile::needsDrive() const {
  if (spec_.omega > 0.0) return false;
  switch (spec_.kind) {
    case ProfileKind::constant: return false;
    case ProfileKind::sinusoidal:
    case ProfileKind::raisedCosineTrain: return true;
    case ProfileKind::table: return spec_.periodic;
  }
  return false;
}

bool TimeProfile::isStatic() const {
  if (spec_.kind == ProfileKind::constant || spec_.peak == 0.0) return true;
  if (spec_.kind == ProfileKind::table) {
    return std::all_of(spec_.values.begin(), spec_.values.end(),
                       [&](double v) { return v == spec_.values.front(); });
  }
  return false;
}

double TimeProfile::period() const {
  if (spec_.kind == ProfileKind::constant) return 0.0;
  if (spec_.kind == ProfileKind::table && !spec_.periodic) return 0.0;
  return omega_ > 0.0 ? 2.0 * std::numbers::pi / omega_ : 0.0;
}

double TimeProfile::tableShape(double x) const {
  const auto& ts = spec_.times;
  const auto& vs = spec_.values;
  if (x <= ts.front()) return vs.front();
  if (x >= ts.back()) return vs.back();
  auto it = std::upper_bound(ts.begin(), ts.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - ts.begin());
  std::size_t lo = hi - 1;
  double w = (x - ts[lo]) / (ts[hi] - ts[lo]);
  return vs[lo] + w * (vs[hi] - vs[lo]);
}

double TimeProfile::shape(double t) const {
  if (spec_.kind == ProfileKind::constant) return 0.0;
  if (spec_.kind == ProfileKind::table && !spec_.periodic) return tableShape(t);
  if (!(omega_ > 0.0)) {
    throw ScenarioError(std::string("profile '") + std::string(toString(spec_.kind)) +
                        "' is not bound to a drive frequency");
  }
  switch (spec_.kind) {
    case ProfileKind::sinusoidal:
      return 0.5 * (1.0 - std::cos(omega_ * t));
    case ProfileKind::raisedCosineTrain: {
      double phase = positiveFraction(omega_ * t / (2.0 * std::numbers::pi));
      if (phase >= spec_.duty) return 0.0;
      return 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * phase / spec_.duty));
    }
    case ProfileKind::table:
      return tableShape(positiveFraction(omega_ * t / (2.0 * std::numbers::pi)));
    case ProfileKind::constant:
      break;
  }
  return 0.0;
}

double TimeProfile::operator()(double t) const {
  if (spec_.peak == 0.0) return spec_.base;
  return spec_.base + spec_.peak * shape(t);
}

double TimeProfile::initialValue() const {
  if (spec_.kind == ProfileKind::table) return spec_.base + spec_.peak * spec_.values.front();
  return spec_.base;
}

double TimeProfile::minValue() const {
  double lo = 0.0;
  double hi = 0.0;
  if (spec_.kind == ProfileKind::sinusoidal || spec_.kind == ProfileKind::raisedCosineTrain) {
    hi = 1.0;
  } else if (spec_.kind == ProfileKind::table) {
    auto [mn, mx] = std::minmax_element(spec_.values.begin(), spec_.values.end());
    lo = *mn;
    hi = *mx;
  }
  return spec_.base + std::min(spec_.peak * lo, spec_.peak * hi);
}

double TimeProfile::maxValue() const {
  double lo = 0.0;
  double hi = 0.0;
  if (spec_.kind == ProfileKind::sinusoidal || spec_.kind == ProfileKind::raisedCosineTrain) {
    hi = 1.0;
  } else if (spec_.kind == ProfileKind::table) {
    auto [mn, mx] = std::minmax_element(spec_.values.begin(), spec_.values.end());
    lo = *mn;
    hi = *mx;
  }
  return spec_.base + std::max(spec_.peak * lo, spec_.peak * hi);
}

std::vector<double> TimeProfile::breakpoints(double t0, double t1) const {
  std::vector<double> out;
  if (isStatic() || !(t1 > t0)) return out;
  if (spec_.kind == ProfileKind::table && !spec_.periodic) {
    for (double x : spec_.times) {
      if (x > t0 && x < t1) out.push_back(x);
    }
  } else if (spec_.kind == ProfileKind::raisedCosineTrain ||
             spec_.kind == ProfileKind::table) {
    double T = period();
    if (!(T > 0.0)) return out;
    std::vector<double> phases;
    if (spec_.kind == ProfileKind::table) {
      phases.assign(spec_.times.begin(), spec_.times.end() - 1);
    } else {
      phases = {0.0};
      if (spec_.duty < 1.0) phases.push_back(spec_.duty);
    }
    auto first = static_cast<long long>(std::floor(t0 / T));
    auto last = static_cast<long long>(std::ceil(t1 / T));
    for (long long n = first; n <= last; ++n) {
      for (double p : phases) {
        double x = (static_cast<double>(n) + p) * T;
        if (x > t0 && x < t1) out.push_back(x);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace dce
