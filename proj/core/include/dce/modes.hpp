#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "dce/quadrature.hpp"
#include "dce/scenario.hpp"

namespace dce {

/// Piecewise-constant medium of a scenario at t = 0.
///
/// Wall scenarios have semi-infinite barrier tails on both sides of [0, L];
/// plasma scenarios have Dirichlet ends.
struct LayeredMedium {
  struct Layer {
    double x0 = 0.0;
    double x1 = 0.0;
    double eps = 1.0;
    double m2 = 0.0;
  };
  struct Barrier {
    double eps = 1.0;
    double m2 = 0.0;
  };

  std::vector<Layer> layers;
  std::optional<Barrier> leftBarrier;
  std::optional<Barrier> rightBarrier;
  double eps0 = 1.0;
  double kPerp = 0.0;
};

LayeredMedium initialMedium(const Scenario& scenario);

/// One layer of a mode function: f(x) = f0 c(x - x0) + df0 s(x - x0), where
/// c, s are the cos / sin(q.)/q solutions for q^2 = eps w^2 - kPerp^2 - m^2.
struct ModeSegment {
  double x0 = 0.0;
  double x1 = 0.0;
  double eps = 1.0;
  double q2 = 0.0;
  double f0 = 0.0;
  double df0 = 0.0;
};

/// Exponential tail C exp(-kappa |x - edge|) inside a barrier.
struct ModeTail {
  double edge = 0.0;
  double kappa = 0.0;
  double eps = 1.0;
  double amplitude = 0.0;
};

/// Named amplitudes of the textbook piecewise forms.
///
/// Plasma: D sin kx on [0, l), B e^{ik'x} + C e^{-ik'x} in the slab,
/// A sin k(x - delta + xi) on (l + delta, L].
/// Wall: C e^{|k'|x} for x < 0, A sin k(x + xi) on [0, L],
/// B e^{-|k'|(x - L)} for x > L (D unused).
struct ModeAmplitudes {
  double A = 0.0;
  std::complex<double> B{};
  std::complex<double> C{};
  double D = 0.0;
};

/// An initial (t = 0) cavity mode, normalised to int eps f^2 = 1 / (2 omega0).
struct Mode {
  int index = 0;
  /// Vacuum-region wavenumber: eps0 omega0^2 = k^2 + kPerp^2.
  double k = 0.0;
  /// Wavenumber in the matter region (slab or barrier); imaginary when evanescent.
  std::complex<double> kPrime{};
  double kPerp = 0.0;
  double omega0 = 0.0;
  double xi = 0.0;
  ModeAmplitudes amps{};
  /// k^2 / (eps0 omega0^2).
  double rK = 1.0;
  /// |2 omega0 int eps f^2 - 1| evaluated by quadrature.
  double normResidual = 0.0;

  std::vector<ModeSegment> segments;
  std::optional<ModeTail> leftTail;
  std::optional<ModeTail> rightTail;

  double value(double x) const;
  double derivative(double x) const;
  /// Segment boundaries, i.e. the points where f'' jumps.
  std::vector<double> nodes() const;
};

struct ModeSolverOptions {
  /// k-grid step of the determinant scan; 0 selects pi / (8 L).
  double scanStep = 0.0;
  double rootRelTol = 1e-12;
  QuadratureOptions quadrature{};
};

/// Matching determinant whose zeros in k are the mode wavenumbers: f(L) for
/// a Dirichlet right end, f'(L) + kappa f(L) for a barrier, with the left
/// boundary condition imposed at x = 0.
double matchingDeterminant(const LayeredMedium& medium, double k);
double matchingDeterminant(const Scenario& scenario, double k);

/// Largest k with bound (exponentially decaying) barrier tails; infinity for
/// Dirichlet cavities.
double boundStateLimit(const LayeredMedium& medium);

/// The nModes lowest initial modes, sorted by omega0.
std::vector<Mode> solveModes(const Scenario& scenario, std::size_t nModes,
                             const ModeSolverOptions& options = {});

/// f0(x); throws DomainError outside the scenario domain.
double evalMode(const Mode& mode, const Scenario& scenario, double x);

/// |2 omega0_a int eps(x,0) f_a f_b dx - delta_ab| for every pair, row-major.
std::vector<std::vector<double>> orthonormalityCheck(const std::vector<Mode>& modes,
                                                     const Scenario& scenario,
                                                     const QuadratureOptions& options = {});

/// int eps(x,0) f_a f_b dx over the whole domain (tails analytic).
double weightedOverlap(const Mode& a, const Mode& b, const QuadratureOptions& options = {});

}  // namespace dce
