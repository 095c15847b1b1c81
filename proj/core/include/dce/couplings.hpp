#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dce/material.hpp"
#include "dce/modes.hpp"
#include "dce/quadrature.hpp"

namespace dce {

enum class Provenance { quadrature, wallClosedForm, plasmaClosedForm, instantaneousMode, syntheticDrive };

std::string_view toString(Provenance p);

/// Coefficients of all modes at one instant. Matrices are row-major n x n;
/// the diagonal of `mu` is the frequency shift delta omega_a(t).
struct CouplingSample {
  std::size_t n = 0;
  std::vector<double> omega;
  std::vector<double> mu;
  std::vector<std::complex<double>> g;

  void resize(std::size_t size);
  double deltaOmega(std::size_t a) const { return mu[a * n + a]; }
};

/// Time-dependent Hamiltonian coefficients omega_a(t), mu_ab(t), g_ab(t).
///
/// Wraps a sampler; copies share it. Evaluation is pure and thread-safe.
class CouplingSet {
 public:
  /// Fills every entry of the sample at time t (omega, mu, g).
  using Sampler = std::function<void(double t, CouplingSample& out)>;
  /// Times in [t0, t1] where some coefficient jumps.
  using BreakpointFn = std::function<std::vector<double>(double t0, double t1)>;

  CouplingSet(std::vector<double> omega0, Provenance provenance, Sampler sampler,
              double tMin = 0.0, double tMax = std::numeric_limits<double>::infinity(),
              BreakpointFn breakpoints = {});

  std::size_t size() const { return omega0_.size(); }
  Provenance provenance() const { return provenance_; }
  const std::vector<double>& omega0() const { return omega0_; }
  double tMin() const { return tMin_; }
  double tMax() const { return tMax_; }
  /// Jump times of the coefficients inside [t0, t1], sorted.
  std::vector<double> breakpoints(double t0, double t1) const;

  void sample(double t, CouplingSample& out) const;
  CouplingSample sample(double t) const;

  double omegaAt(std::size_t a, double t) const;
  double deltaOmegaAt(std::size_t a, double t) const;
  double muAt(std::size_t a, std::size_t b, double t) const;
  std::complex<double> gAt(std::size_t a, std::size_t b, double t) const;

  /// Same coefficients restricted to the listed modes (in that order).
  CouplingSet restrict(std::vector<std::size_t> modes) const;
  /// Off-diagonal mu and g zeroed.
  CouplingSet diagonalOnly() const;

  /// Non-fatal diagnostics collected while building the set.
  std::vector<std::string> warnings;

 private:
  void checkTime(double t) const;

  std::vector<double> omega0_;
  Provenance provenance_;
  std::shared_ptr<const Sampler> sampler_;
  double tMin_;
  double tMax_;
  BreakpointFn breakpoints_;
};

/// G^eps_ab(t) = 1/2 w_a w_b int_{dV(t)} eps^2(x,0) [eps^{-1}(x,t) - eps^{-1}(x,0)] f_a f_b dx.
double gEps(const Mode& a, const Mode& b, const MaterialProfile& material, double t,
            const QuadratureOptions& options = {});

/// G^m_ab(t) = 1/2 int_{dV(t)} [m^2(x,t) - m^2(x,0)] f_a f_b dx.
double gM(const Mode& a, const Mode& b, const MaterialProfile& material, double t,
          const QuadratureOptions& options = {});

/// Assembles mu = 2(G^eps + G^m), g = -i(-G^eps + G^m) from quadratures on a
/// monotone time grid and interpolates between grid points with monotone
/// cubics (PCHIP). A repeated grid time marks a jump: the first copy is
/// evaluated as a left limit, the second as the value at the jump.
/// Off-diagonal entries are computed only when `offDiagonal` is set.
CouplingSet couplingsByQuadrature(const std::vector<Mode>& modes, const MaterialProfile& material,
                                  std::span<const double> times, bool offDiagonal = false,
                                  const QuadratureOptions& options = {});

/// Time grid on [0, tEnd] with `perPeriod` points per period (period > 0),
/// at least `minPoints` points, and each breakpoint inserted twice.
std::vector<double> samplingGrid(double tEnd, double period, std::size_t perPeriod,
                                 std::span<const double> breakpoints, std::size_t minPoints = 64);

/// Closed form of the wall coefficients for one mode:
/// delta omega = 2(G^eps + G^m), g = -i(-G^eps + G^m) with
/// G^m = m^2 A^2 I(t) / 2, G^eps = w^2 eps0 (eps0/eps1 - 1) A^2 I(t) / 2,
/// I(t) = int_0^delta(t) sin^2 k(x + xi) dx evaluated without cancellation.
CouplingSet wallClosedForm(const WallScenario& scenario, const Mode& mode);

/// int_0^d sin^2 k(x + xi) dx, accurate for kd, k xi -> 0.
double sinSquaredIntegral(double k, double xi, double d);

/// Thin-slab closed form for one plasma mode:
/// delta omega = w (d_eps + d_m) / L, g = -(i/2) w (-d_eps + d_m) / L.
/// The placement factor sin^2 kl becomes (k delta)^2 / 3 for a slab touching
/// either end. Adds a warning when |k'| delta > 0.3 anywhere in the profiles.
CouplingSet plasmaClosedForm(const PlasmaScenario& scenario, const Mode& mode);

/// Effective displacements d_eps(t), d_m(t) of the thin-slab closed form.
struct PlasmaDisplacements {
  double deltaEps = 0.0;
  double deltaM = 0.0;
};
PlasmaDisplacements plasmaDisplacements(const PlasmaScenario& scenario, const Mode& mode, double t);
/// sin^2 kl, or (k delta)^2 / 3 at either cavity end.
double placementFactor(const PlasmaScenario& scenario, double k);

/// delta omega(t) = <dw>(1 - cos Omega t), g = -i delta omega / 2.
CouplingSet syntheticDrive(double omega0, double meanDeltaOmega, double driveOmega);

/// Instantaneous-mode coefficients from standard ones (diagonal only):
/// delta omega_bar = delta omega, g_bar = i g' / (2 omega_bar), with g' from a
/// fourth-order centred difference on the uniform grid `times` (second-order
/// one-sided at the ends). Throws Error when the grid has fewer than 32
/// points per drive period.
CouplingSet instantaneousFromStandard(const CouplingSet& standard, std::span<const double> times,
                                      double driveOmega);

struct FourierComponent {
  double meanDeltaOmega = 0.0;
  std::complex<double> gOmega{};
};

/// <delta omega> = (1/T) int_0^T delta omega dt, <g>_Omega = (1/T) int_0^T g e^{i Omega t} dt.
FourierComponent fourierComponent(const CouplingSet& c, double driveOmega, std::size_t mode = 0,
                                  const QuadratureOptions& options = {});

}  // namespace dce
