#pragma once

#include <functional>
#include <span>

namespace dce {

struct QuadratureOptions {
  double relTol = 1e-10;
  /// Maximum bisection depth per panel.
  unsigned maxDepth = 18;
};

/// Adaptive 15-point Gauss-Kronrod quadrature of `f` over [breaks.front(),
/// breaks.back()], with every interior break used as a panel boundary.
/// Breaks must be sorted; zero-length panels are skipped.
/// Throws QuadratureError when a panel does not reach the tolerance.
double integrate(const std::function<double(double)>& f, std::span<const double> breaks,
                 const QuadratureOptions& options = {});

/// Oriented integral: b < a gives minus the integral over [b, a].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& options = {});

}  // namespace dce
