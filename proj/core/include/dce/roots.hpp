#pragma once

#include <functional>

namespace dce {

/// Refines a sign-changing bracket [a, b] of `f` (TOMS 748: bracketed secant
/// and inverse cubic steps with bisection safeguard). Converges to `relTol * |x|`.
/// Throws RootFindingError if the bracket has no sign change or the
/// iteration budget is exhausted.
double refineRoot(const std::function<double(double)>& f, double a, double b,
                  double relTol = 1e-12, int maxIterations = 200);

}  // namespace dce
