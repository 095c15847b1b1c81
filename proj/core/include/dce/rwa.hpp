#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace dce {

/// Drive of one mode in the rotating frame. Omega = 2(omega0 + <dw> + Delta)
/// holds exactly; use the factories to derive one of Delta, Omega.
struct DriveSpec {
  double omega0 = 1.0;
  double meanDeltaOmega = 0.0;
  std::complex<double> gOmega{};
  double Delta = 0.0;
  double Omega = 2.0;
  double T = 0.0;
  long nPulse = 0;

  static DriveSpec fromDetuning(double omega0, double meanDeltaOmega, std::complex<double> gOmega,
                                double detuning, long nPulse = 0);
  static DriveSpec fromOmega(double omega0, double meanDeltaOmega, std::complex<double> gOmega,
                             double driveOmega, long nPulse = 0);

  /// |2<g>_Omega|^2 - Delta^2.
  double chiSquared() const;
  /// nPulse * T.
  double duration() const { return double(nPulse) * T; }
};

enum class RwaBranch { hyperbolic, critical, oscillatory };

std::string_view toString(RwaBranch b);

struct RwaSolution {
  /// Signed chi^2 = |2<g>_Omega|^2 - Delta^2.
  double chi2 = 0.0;
  /// |chi|; the growth rate on the hyperbolic branch, the oscillation
  /// frequency on the oscillatory one.
  double chi = 0.0;
  RwaBranch branch = RwaBranch::critical;
  /// |2<g>_Omega|.
  double coupling = 0.0;
  double tEnd = 0.0;

  /// (|2g| / chi)^2 sinh^2 chi t, (|2g| / |chi|)^2 sin^2 |chi| t, or |2g|^2 t^2.
  double nGamma(double t) const;
  std::vector<double> nGamma(std::span<const double> t) const;
  bool imaginary() const { return branch == RwaBranch::oscillatory; }
};

RwaSolution rwaSolve(const DriveSpec& drive, double tEnd = 0.0);

/// N_gamma on each branch evaluated explicitly for a given chi^2.
double rwaHyperbolic(double coupling, double chi2, double t);
double rwaOscillatory(double coupling, double chi2, double t);
double rwaCritical(double coupling, double t);

}  // namespace dce
