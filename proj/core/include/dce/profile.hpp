#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dce {

/// Parametric families for the time dependence of a material parameter.
///
/// Every family is written as `base + peak * shape(t)` with `shape(0) = 0`
/// for the drive-locked families, so a profile is fully described by the
/// config file. Drive-locked families take their period `T = 2 pi / Omega`
/// from the drive frequency they are bound to, unless `omega` is set
/// explicitly.
enum class ProfileKind {
  constant,           ///< shape(t) = 0
  sinusoidal,         ///< shape(t) = (1 - cos Omega t) / 2
  raisedCosineTrain,  ///< one raised-cosine pulse of width duty*T per period
  table,              ///< piecewise-linear samples, optionally periodic
};

std::string_view toString(ProfileKind kind);
ProfileKind profileKindFromString(std::string_view name);

struct ProfileSpec {
  ProfileKind kind = ProfileKind::constant;
  double base = 0.0;
  double peak = 0.0;
  /// Fraction of the period occupied by a pulse (raisedCosineTrain only).
  double duty = 1.0;
  /// Explicit angular frequency; 0 means "use the drive frequency".
  double omega = 0.0;
  /// Table abscissae: phase fractions in [0, 1] when periodic, absolute
  /// times otherwise. Repeated abscissae encode jumps (right-continuous).
  std::vector<double> times;
  /// Table shape values, multiplied by `peak`.
  std::vector<double> values;
  bool periodic = true;

  bool operator==(const ProfileSpec&) const = default;
};

ProfileSpec constantProfile(double value);
ProfileSpec sinusoidalProfile(double base, double peak);
ProfileSpec raisedCosineTrainProfile(double base, double peak, double duty);
/// 50%-duty rectangular pulse train: off for the first half period, on for
/// the second. Encoded as a periodic table.
ProfileSpec rectangularTrainProfile(double base, double peak);

/// A profile bound (or not yet bound) to a drive frequency. Immutable value.
class TimeProfile {
 public:
  TimeProfile() = default;
  explicit TimeProfile(ProfileSpec spec, double driveOmega = 0.0);

  double operator()(double t) const;

  /// Same shape, period taken from `driveOmega`.
  TimeProfile rebound(double driveOmega) const;

  const ProfileSpec& spec() const { return spec_; }
  double angularFrequency() const { return omega_; }
  bool needsDrive() const;
  bool isBound() const { return !needsDrive() || omega_ > 0.0; }
  bool isStatic() const;
  /// 0 for aperiodic profiles.
  double period() const;

  double initialValue() const;
  double minValue() const;
  double maxValue() const;

  /// Points in [t0, t1] where the profile has a jump or a kink.
  std::vector<double> breakpoints(double t0, double t1) const;

 private:
  double shape(double t) const;
  double tableShape(double x) const;

  ProfileSpec spec_{};
  double omega_ = 0.0;
};

}  // namespace dce
