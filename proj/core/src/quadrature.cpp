#include "dce/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "dce/error.hpp"

namespace dce {

namespace {

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

// Boost 1.74 reports the Kronrod-Gauss difference of the panel mapped to
// [-1, 1] without the Jacobian, so the bisection is driven here from single
// non-adaptive panels with the error rescaled.
Estimate panel(const std::function<double(double)>& f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  Estimate e;
  e.value = gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &e.error, &e.l1);
  e.error *= 0.5 * (b - a);
  return e;
}

Estimate adapt(const std::function<double(double)>& f, double a, double b, Estimate whole, double absTol,
               unsigned depth) {
  if (whole.error <= absTol || depth == 0) return whole;
  double mid = 0.5 * (a + b);
  if (!(mid > a && mid < b)) return whole;
  Estimate left = adapt(f, a, mid, panel(f, a, mid), 0.5 * absTol, depth - 1);
  Estimate right = adapt(f, mid, b, panel(f, mid, b), 0.5 * absTol, depth - 1);
  return {left.value + right.value, left.error + right.error, left.l1 + right.l1};
}

}  // namespace

double integrate(const std::function<double(double)>& f, std::span<const double> breaks,
                 const QuadratureOptions& options) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double a = breaks[i];
    double b = breaks[i + 1];
    if (!(b > a)) continue;
    Estimate first = panel(f, a, b);
    Estimate r = adapt(f, a, b, first, options.relTol * first.l1, options.maxDepth);
    if (!std::isfinite(r.value)) {
      throw QuadratureError("non-finite integrand on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "]");
    }
    // Bisection stops silently at maxDepth; a residual far above the request
    // is non-convergence.
    if (r.error > 1e3 * options.relTol * r.l1 + 1e-300) {
      throw QuadratureError("quadrature did not converge on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "]: error estimate " + std::to_string(r.error));
    }
    total += r.value;
  }
  return total;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& options) {
  if (b < a) return -integrate(f, b, a, options);
  double breaks[2] = {a, b};
  return integrate(f, std::span<const double>(breaks, 2), options);
}

}  // namespace dce
