#include "dce/rwa.hpp"

#include <cmath>
#include <numbers>

#include "dce/error.hpp"

namespace dce {

namespace {

// sinh(x)/x and sin(x)/x, exact at 0.
double sinhc(double x) { return x == 0.0 ? 1.0 : std::sinh(x) / x; }
double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace

DriveSpec DriveSpec::fromDetuning(double omega0, double meanDeltaOmega, std::complex<double> gOmega,
                                  double detuning, long nPulse) {
  DriveSpec d;
  d.omega0 = omega0;
  d.meanDeltaOmega = meanDeltaOmega;
  d.gOmega = gOmega;
  d.Delta = detuning;
  d.Omega = 2.0 * (omega0 + meanDeltaOmega + detuning);
  if (!(d.Omega > 0.0)) throw Error("drive frequency must be positive");
  d.T = 2.0 * std::numbers::pi / d.Omega;
  d.nPulse = nPulse;
  return d;
}

DriveSpec DriveSpec::fromOmega(double omega0, double meanDeltaOmega, std::complex<double> gOmega,
                               double driveOmega, long nPulse) {
  if (!(driveOmega > 0.0)) throw Error("drive frequency must be positive");
  DriveSpec d;
  d.omega0 = omega0;
  d.meanDeltaOmega = meanDeltaOmega;
  d.gOmega = gOmega;
  d.Omega = driveOmega;
  d.Delta = 0.5 * driveOmega - omega0 - meanDeltaOmega;
  d.T = 2.0 * std::numbers::pi / driveOmega;
  d.nPulse = nPulse;
  return d;
}

double DriveSpec::chiSquared() const {
  double c = 2.0 * std::abs(gOmega);
  return c * c - Delta * Delta;
}

std::string_view toString(RwaBranch b) {
  switch (b) {
    case RwaBranch::hyperbolic: return "hyperbolic";
    case RwaBranch::critical: return "critical";
    case RwaBranch::oscillatory: return "oscillatory";
  }
  return "unknown";
}

double rwaHyperbolic(double coupling, double chi2, double t) {
  double chi = std::sqrt(chi2);
  double s = sinhc(chi * t) * t;
  return coupling * coupling * s * s;
}

double rwaOscillatory(double coupling, double chi2, double t) {
  double chi = std::sqrt(-chi2);
  double s = sinc(chi * t) * t;
  return coupling * coupling * s * s;
}

double rwaCritical(double coupling, double t) { return coupling * coupling * t * t; }

double RwaSolution::nGamma(double t) const {
  switch (branch) {
    case RwaBranch::hyperbolic: return rwaHyperbolic(coupling, chi2, t);
    case RwaBranch::oscillatory: return rwaOscillatory(coupling, chi2, t);
    case RwaBranch::critical: return rwaCritical(coupling, t);
  }
  return 0.0;
}

std::vector<double> RwaSolution::nGamma(std::span<const double> t) const {
  std::vector<double> out;
  out.reserve(t.size());
  for (double x : t) out.push_back(nGamma(x));
  return out;
}

RwaSolution rwaSolve(const DriveSpec& drive, double tEnd) {
  RwaSolution s;
  s.coupling = 2.0 * std::abs(drive.gOmega);
  s.chi2 = drive.chiSquared();
  s.chi = std::sqrt(std::abs(s.chi2));
  s.branch = s.chi2 > 0.0 ? RwaBranch::hyperbolic
                          : (s.chi2 < 0.0 ? RwaBranch::oscillatory : RwaBranch::critical);
  s.tEnd = tEnd > 0.0 ? tEnd : drive.duration();
  return s;
}

}  // namespace dce
