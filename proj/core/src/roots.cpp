#include "dce/roots.hpp"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <utility>

#include "dce/error.hpp"

namespace dce {

double refineRoot(const std::function<double(double)>& f, double a, double b,
                  double relTol, int maxIterations) {
  if (a > b) std::swap(a, b);
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw RootFindingError("bracket has no sign change", a, b);
  }
  auto converged = [relTol](double lo, double hi) {
    return std::abs(hi - lo) <= relTol * std::max(std::abs(lo), std::abs(hi));
  };
  std::uintmax_t iterations = std::uintmax_t(std::max(maxIterations, 1));
  std::pair<double, double> r;
  try {
    r = boost::math::tools::toms748_solve(f, a, b, fa, fb, converged, iterations);
  } catch (const std::exception& e) {
    throw RootFindingError(std::string("root refinement failed: ") + e.what(), a, b);
  }
  if (!converged(r.first, r.second)) throw RootFindingError("root refinement did not converge", r.first, r.second);
  return 0.5 * (r.first + r.second);
}

}  // namespace dce
