#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace dce {

/// Right-hand side dy/dt = f(t, y) of a real ODE system of fixed size.
using OdeRhs = std::function<void(double t, const double* y, double* dydt)>;

/// Called after every accepted step with the new time and state. May throw
/// to abort the integration.
using OdeObserver = std::function<void(double t, const double* y)>;

struct OdeOptions {
  double relTol = 1e-10;
  /// 0 selects relTol * 1e-2.
  double absTol = 0.0;
  /// 0 means unbounded.
  double maxStep = 0.0;
  long maxSteps = 50'000'000;
};

struct OdeStats {
  long steps = 0;
  long accepted = 0;
  long rejected = 0;
  long rhsCalls = 0;
};

struct OdeResult {
  /// Output times and states (row-major, size times.size() * n).
  std::vector<double> times;
  std::vector<double> states;
  std::size_t dimension = 0;
  OdeStats stats{};

  std::span<const double> state(std::size_t i) const {
    return {states.data() + i * dimension, dimension};
  }
};

/// Dormand-Prince 8(5,3) with 7th-order dense output (Hairer-Wanner DOP853).
///
/// Integrates from t0 to t1. Every breakpoint strictly inside (t0, t1) is hit
/// exactly as a step boundary and the stage derivative is re-evaluated there,
/// so right-hand sides with jumps at breakpoints are handled without error
/// control fighting the discontinuity. States are reported at each entry of
/// `outputTimes` (sorted, inside [t0, t1]) through the dense interpolant.
/// Throws IntegrationError on step-size underflow or when maxSteps is exceeded.
OdeResult integrateDop853(const OdeRhs& rhs, std::span<const double> y0, double t0, double t1,
                          std::span<const double> outputTimes,
                          std::span<const double> breakpoints = {},
                          const OdeOptions& options = {}, const OdeObserver& observer = {});

}  // namespace dce
