#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "dce/couplings.hpp"
#include "dce/ode.hpp"

namespace dce {

/// Bogoliubov coefficients a(t) = A a + B^* a^dagger of one mode, with the
/// zero-point phase K(t) = phi_A(t) + int_0^t omega / 2.
struct BogoliubovState {
  double t = 0.0;
  std::complex<double> A{1.0, 0.0};
  std::complex<double> B{0.0, 0.0};
  double K = 0.0;
  /// arg A, continuously unwrapped from 0.
  double phiA = 0.0;
};

/// A = cosh r e^{i phi_A}, B = sinh r e^{i phi_B}, lambda = r e^{i(phi_A - phi_B)}.
struct SqueezeDecomposition {
  double r = 0.0;
  double phiA = 0.0;
  double phiB = 0.0;
  std::complex<double> lambda{};
};

SqueezeDecomposition squeezeOf(const BogoliubovState& s);
/// Inverse of squeezeOf.
BogoliubovState fromSqueeze(const SqueezeDecomposition& d, double t = 0.0);
/// |B|^2.
double photonNumber(const BogoliubovState& s);
/// |A|^2 - |B|^2 - 1.
double invariantResidual(const BogoliubovState& s);

struct EvolutionOptions {
  OdeOptions ode{};
  /// Output times; empty selects a uniform grid (samplesPerPeriod per drive
  /// period when drivePeriod > 0, 1001 points otherwise).
  std::vector<double> outputTimes;
  std::size_t samplesPerPeriod = 16;
  /// Forced step boundaries at multiples of this period (0 disables).
  double drivePeriod = 0.0;
  /// Abort when ||A|^2 - |B|^2 - 1| exceeds driftFactor * relTol * (|A|^2 + |B|^2)
  /// per elapsed oscillation period 2 pi / omega0 (the global error of the
  /// integrator grows linearly with the number of cycles).
  double driftFactor = 10.0;
  /// Rescale |A| to sqrt(1 + |B|^2) at every drive period (long pulse trains).
  bool symplecticProjection = false;
};

struct Trajectory {
  std::vector<BogoliubovState> states;
  OdeStats stats{};
  /// Largest ||A|^2 - |B|^2 - 1| over every accepted step.
  double maxResidual = 0.0;

  const BogoliubovState& final() const { return states.back(); }
  std::vector<double> times() const;
  std::vector<double> photonNumbers() const;
};

/// Uniform output grid on [0, tEnd] following the EvolutionOptions rules.
std::vector<double> outputGrid(double tEnd, const EvolutionOptions& options);

/// Integrates A' = -i w(t) A + 2 g(t) B, B' = i w(t) B + 2 g*(t) A for the
/// diagonal coefficients of `mode`, from A = 1, B = 0 at t = 0.
/// Throws IntegrationError on step underflow or invariant drift.
Trajectory integrateMaster(const CouplingSet& couplings, std::size_t mode, double tEnd,
                           const EvolutionOptions& options = {});

/// Matrices (row-major n x n) of the multimode transformation
/// a_a(t) = sum_b A_ab a_b + B*_ab a_b^dagger.
struct MultimodeState {
  double t = 0.0;
  std::size_t n = 0;
  std::vector<std::complex<double>> A;
  std::vector<std::complex<double>> B;

  /// N_a = sum_b |B_ab|^2.
  std::vector<double> photonNumbers() const;
  /// Largest entry of |A A^dag - B* B^T - 1| and |A B^dag - B* A^T|.
  double symplecticResidual() const;
};

struct MultimodeTrajectory {
  std::vector<MultimodeState> states;
  OdeStats stats{};
  double maxResidual = 0.0;

  const MultimodeState& final() const { return states.back(); }
};

/// A' = -i M A + 2 g B, B' = i M B + 2 g* A with M = diag(omega) + offdiag(mu).
MultimodeTrajectory integrateMultimode(const CouplingSet& couplings, double tEnd,
                                       const EvolutionOptions& options = {});

struct AveragedSeries {
  std::vector<double> times;
  std::vector<double> values;
};

/// Centred moving average over exactly one period of piecewise-linear data;
/// half a period is dropped at each end.
AveragedSeries periodAverage(std::span<const double> times, std::span<const double> values,
                             double period);

}  // namespace dce
