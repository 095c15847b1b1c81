#include "dce/modes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dce/error.hpp"
#include "dce/material.hpp"
#include "dce/roots.hpp"

namespace dce {

namespace {

constexpr double kPi = std::numbers::pi;

struct Basis {
  double c;
  double s;
  double dc;  // c' = -q2 s
};

Basis basisAt(double q2, double y) {
  if (q2 > 0.0) {
    double q = std::sqrt(q2);
    return {std::cos(q * y), std::sin(q * y) / q, -q * std::sin(q * y)};
  }
  if (q2 < 0.0) {
    double kap = std::sqrt(-q2);
    return {std::cosh(kap * y), std::sinh(kap * y) / kap, kap * std::sinh(kap * y)};
  }
  return {1.0, y, 0.0};
}

struct LayerIntegrals {
  double cc;
  double cs;
  double ss;
};

// int_0^d of c^2, c s, s^2.
LayerIntegrals layerIntegrals(double q2, double d) {
  double z = q2 * d * d;
  if (std::abs(z) < 1.0) {
    // Power series in (-q2 d^2); coefficients of c and s are 1/(2n)! and 1/(2n+1)!.
    constexpr int kTerms = 24;
    std::array<double, 2 * kTerms + 2> invFact{};
    invFact[0] = 1.0;
    for (std::size_t i = 1; i < invFact.size(); ++i) invFact[i] = invFact[i - 1] / double(i);
    double cc = 0.0, cs = 0.0, ss = 0.0;
    double zp = 1.0;
    for (int j = 0; j < kTerms; ++j) {
      double acc = 0.0, acs = 0.0, ass = 0.0;
      for (int n = 0; n <= j; ++n) {
        int m = j - n;
        acc += invFact[2 * n] * invFact[2 * m];
        acs += invFact[2 * n] * invFact[2 * m + 1];
        ass += invFact[2 * n + 1] * invFact[2 * m + 1];
      }
      cc += zp * acc / (2 * j + 1);
      cs += zp * acs / (2 * j + 2);
      ss += zp * ass / (2 * j + 3);
      zp *= -z;
    }
    return {cc * d, cs * d * d, ss * d * d * d};
  }
  if (q2 > 0.0) {
    double q = std::sqrt(q2);
    double s2 = std::sin(2.0 * q * d) / (4.0 * q);
    double sn = std::sin(q * d);
    return {0.5 * d + s2, sn * sn / (2.0 * q2), (0.5 * d - s2) / q2};
  }
  double kap = std::sqrt(-q2);
  double s2 = std::sinh(2.0 * kap * d) / (4.0 * kap);
  double sn = std::sinh(kap * d);
  return {0.5 * d + s2, sn * sn / (2.0 * kap * kap), (s2 - 0.5 * d) / (kap * kap)};
}

double omegaSquared(const LayeredMedium& m, double k) { return (k * k + m.kPerp * m.kPerp) / m.eps0; }

double barrierKappa(const LayeredMedium& m, const LayeredMedium::Barrier& b, double k) {
  double k2 = m.kPerp * m.kPerp + b.m2 - b.eps * omegaSquared(m, k);
  return k2 > 0.0 ? std::sqrt(k2) : 0.0;
}

struct Propagation {
  std::vector<ModeSegment> segments;
  double fEnd = 0.0;
  double dfEnd = 0.0;
  double kappaLeft = 0.0;
  double kappaRight = 0.0;
};

Propagation propagate(const LayeredMedium& m, double k) {
  Propagation p;
  double w2 = omegaSquared(m, k);
  double f = 0.0, df = 1.0;
  if (m.leftBarrier) {
    p.kappaLeft = barrierKappa(m, *m.leftBarrier, k);
    f = p.kappaLeft > 0.0 ? 1.0 / p.kappaLeft : 0.0;
    df = 1.0;
  }
  p.segments.reserve(m.layers.size());
  for (const auto& layer : m.layers) {
    double q2 = layer.eps * w2 - m.kPerp * m.kPerp - layer.m2;
    p.segments.push_back({layer.x0, layer.x1, layer.eps, q2, f, df});
    Basis b = basisAt(q2, layer.x1 - layer.x0);
    double fn = f * b.c + df * b.s;
    double dfn = f * b.dc + df * b.c;
    f = fn;
    df = dfn;
  }
  p.fEnd = f;
  p.dfEnd = df;
  if (m.rightBarrier) p.kappaRight = barrierKappa(m, *m.rightBarrier, k);
  return p;
}

double determinantOf(const LayeredMedium& m, const Propagation& p) {
  if (m.rightBarrier) return p.dfEnd + p.kappaRight * p.fEnd;
  return p.fEnd;
}

double opticalLength(const LayeredMedium& m) {
  double len = 0.0;
  for (const auto& layer : m.layers) {
    len += (layer.x1 - layer.x0) * std::sqrt(std::max(layer.eps / m.eps0, 1.0));
  }
  return len;
}

const ModeSegment* findSegment(const std::vector<ModeSegment>& segs, double x) {
  if (segs.empty() || x < segs.front().x0 || x > segs.back().x1) return nullptr;
  auto it = std::upper_bound(segs.begin(), segs.end(), x,
                             [](double v, const ModeSegment& s) { return v < s.x0; });
  if (it == segs.begin()) return &segs.front();
  return &*std::prev(it);
}

Mode buildMode(const LayeredMedium& medium, const Scenario& scenario, double k, int index,
               const QuadratureOptions& quad) {
  Propagation p = propagate(medium, k);
  Mode mode;
  mode.index = index;
  mode.k = k;
  mode.kPerp = medium.kPerp;
  mode.omega0 = std::sqrt(omegaSquared(medium, k));
  mode.rK = k * k / (k * k + medium.kPerp * medium.kPerp);

  double norm = 0.0;
  for (const auto& s : p.segments) {
    LayerIntegrals li = layerIntegrals(s.q2, s.x1 - s.x0);
    norm += s.eps * (s.f0 * s.f0 * li.cc + 2.0 * s.f0 * s.df0 * li.cs + s.df0 * s.df0 * li.ss);
  }
  double cLeft = p.segments.front().f0;
  double cRight = p.fEnd;
  if (medium.leftBarrier) norm += medium.leftBarrier->eps * cLeft * cLeft / (2.0 * p.kappaLeft);
  if (medium.rightBarrier) norm += medium.rightBarrier->eps * cRight * cRight / (2.0 * p.kappaRight);

  double scale = 1.0 / std::sqrt(2.0 * mode.omega0 * norm);
  for (auto& s : p.segments) {
    s.f0 *= scale;
    s.df0 *= scale;
  }
  mode.segments = std::move(p.segments);
  if (medium.leftBarrier) {
    mode.leftTail = ModeTail{mode.segments.front().x0, p.kappaLeft, medium.leftBarrier->eps,
                             cLeft * scale};
  }
  if (medium.rightBarrier) {
    mode.rightTail = ModeTail{mode.segments.back().x1, p.kappaRight, medium.rightBarrier->eps,
                              cRight * scale};
  }

  if (const auto* wall = std::get_if<WallScenario>(&scenario)) {
    double f0 = mode.value(0.0);
    double g0 = mode.derivative(0.0) / k;
    mode.amps.A = std::hypot(f0, g0);
    mode.xi = std::atan2(f0, g0) / k;
    mode.amps.C = mode.leftTail->amplitude;
    mode.amps.B = mode.rightTail->amplitude;
    mode.kPrime = {0.0, p.kappaLeft};
    (void)wall;
  } else {
    const auto& plasma = std::get<PlasmaScenario>(scenario);
    double l = plasma.slabPosition;
    double r = l + plasma.slabThickness;
    double eps1 = plasma.eps1.initialValue();
    double w2 = mode.omega0 * mode.omega0;
    std::complex<double> kp = std::sqrt(std::complex<double>(
        eps1 * w2 - plasma.kPerp * plasma.kPerp - plasma.mp2.initialValue(), 0.0));
    mode.kPrime = kp;
    if (l > 0.0) mode.amps.D = mode.derivative(0.0) / k;
    double fl = mode.value(l);
    double dfl = mode.derivative(l);
    if (std::abs(kp) > 0.0) {
      std::complex<double> i{0.0, 1.0};
      std::complex<double> ratio = dfl / (i * kp);
      mode.amps.B = 0.5 * std::exp(-i * kp * l) * (fl + ratio);
      mode.amps.C = 0.5 * std::exp(i * kp * l) * (fl - ratio);
    } else {
      mode.amps.B = 0.5 * fl;
      mode.amps.C = 0.5 * fl;
    }
    if (r < plasma.length) {
      double fr = mode.value(r);
      double gr = mode.derivative(r) / k;
      double amp = std::hypot(fr, gr);
      double theta = std::atan2(fr, gr) - k * r;
      double n = std::ceil((theta - 0.5 * kPi) / kPi);
      double thetaRed = theta - n * kPi;
      mode.amps.A = (std::fmod(std::abs(n), 2.0) == 0.0) ? amp : -amp;
      mode.xi = plasma.slabThickness + thetaRed / k;
    }
  }

  mode.normResidual = std::abs(2.0 * mode.omega0 * weightedOverlap(mode, mode, quad) - 1.0);
  return mode;
}

}  // namespace

double Mode::value(double x) const {
  if (leftTail && x < leftTail->edge) {
    return leftTail->amplitude * std::exp(-leftTail->kappa * (leftTail->edge - x));
  }
  if (rightTail && x > rightTail->edge) {
    return rightTail->amplitude * std::exp(-rightTail->kappa * (x - rightTail->edge));
  }
  const ModeSegment* s = findSegment(segments, x);
  if (!s) return 0.0;
  Basis b = basisAt(s->q2, x - s->x0);
  return s->f0 * b.c + s->df0 * b.s;
}

double Mode::derivative(double x) const {
  if (leftTail && x < leftTail->edge) {
    return leftTail->kappa * leftTail->amplitude *
           std::exp(-leftTail->kappa * (leftTail->edge - x));
  }
  if (rightTail && x > rightTail->edge) {
    return -rightTail->kappa * rightTail->amplitude *
           std::exp(-rightTail->kappa * (x - rightTail->edge));
  }
  const ModeSegment* s = findSegment(segments, x);
  if (!s) return 0.0;
  Basis b = basisAt(s->q2, x - s->x0);
  return s->f0 * b.dc + s->df0 * b.c;
}

std::vector<double> Mode::nodes() const {
  std::vector<double> out;
  out.reserve(segments.size() + 1);
  for (const auto& s : segments) out.push_back(s.x0);
  if (!segments.empty()) out.push_back(segments.back().x1);
  return out;
}

LayeredMedium initialMedium(const Scenario& scenario) {
  validate(scenario);
  LayeredMedium m;
  if (const auto* wall = std::get_if<WallScenario>(&scenario)) {
    m.eps0 = wall->eps0;
    m.kPerp = wall->kPerp;
    m.layers.push_back({0.0, wall->length, wall->eps0, 0.0});
    m.leftBarrier = LayeredMedium::Barrier{wall->eps1, wall->m2};
    m.rightBarrier = LayeredMedium::Barrier{wall->eps1, wall->m2};
    return m;
  }
  const auto& p = std::get<PlasmaScenario>(scenario);
  m.eps0 = p.eps0;
  m.kPerp = p.kPerp;
  double l = p.slabPosition;
  double r = l + p.slabThickness;
  if (l > 0.0) m.layers.push_back({0.0, l, p.eps0, 0.0});
  m.layers.push_back({l, r, p.eps1.initialValue(), p.mp2.initialValue()});
  if (r < p.length) m.layers.push_back({r, p.length, p.eps0, 0.0});
  return m;
}

double matchingDeterminant(const LayeredMedium& medium, double k) {
  return determinantOf(medium, propagate(medium, k));
}

double matchingDeterminant(const Scenario& scenario, double k) {
  return matchingDeterminant(initialMedium(scenario), k);
}

double boundStateLimit(const LayeredMedium& medium) {
  double limit = std::numeric_limits<double>::infinity();
  for (const auto& b : {medium.leftBarrier, medium.rightBarrier}) {
    if (!b) continue;
    double k2 = medium.eps0 * (medium.kPerp * medium.kPerp + b->m2) / b->eps -
                medium.kPerp * medium.kPerp;
    limit = std::min(limit, k2 > 0.0 ? std::sqrt(k2) : 0.0);
  }
  return limit;
}

std::vector<Mode> solveModes(const Scenario& scenario, std::size_t nModes,
                             const ModeSolverOptions& options) {
  if (nModes == 0) throw ScenarioError("nModes must be >= 1");
  LayeredMedium medium = initialMedium(scenario);
  double length = cavityLength(scenario);
  double step = options.scanStep > 0.0 ? options.scanStep
                                       : kPi / (8.0 * std::max(length, opticalLength(medium)));
  double kLimit = boundStateLimit(medium);
  double kCap = std::min(kLimit, 4.0 * double(nModes + 2) * kPi / length *
                                     std::max(1.0, opticalLength(medium) / length));
  if (std::isfinite(kLimit)) kCap = kLimit;
  auto det = [&](double k) { return matchingDeterminant(medium, k); };

  std::vector<double> roots;
  auto refine = [&](double a, double b) {
    roots.push_back(refineRoot(det, a, b, options.rootRelTol));
  };

  double kStart = 1e-3 * step;
  double kPrev = kStart;
  double dPrev = det(kPrev);
  double kPrev2 = kPrev;
  double dPrev2 = dPrev;
  // Margin keeps the last grid point strictly inside the bound-state range.
  double kEnd = std::isfinite(kLimit) ? kCap * (1.0 - 1e-12) : kCap;
  for (double k = kStart + step; roots.size() < nModes; k += step) {
    if (k > kEnd) {
      if (kPrev >= kEnd) break;
      k = kEnd;
    }
    double d = det(k);
    if (d == 0.0) {
      roots.push_back(k);
    } else if (dPrev != 0.0 && (d > 0.0) != (dPrev > 0.0)) {
      refine(kPrev, k);
    } else if (dPrev != 0.0 && dPrev2 != 0.0 && kPrev2 < kPrev && (d > 0.0) == (dPrev2 > 0.0) &&
               std::abs(dPrev) < std::abs(d) && std::abs(dPrev) < std::abs(dPrev2)) {
      // |D| has a local minimum without a sign change: look for a close pair.
      constexpr int kSub = 64;
      double h = (k - kPrev2) / kSub;
      double ka = kPrev2, da = dPrev2;
      double minAbs = std::abs(da);
      std::size_t before = roots.size();
      for (int j = 1; j <= kSub; ++j) {
        double kb = kPrev2 + j * h;
        double db = det(kb);
        minAbs = std::min(minAbs, std::abs(db));
        if ((db > 0.0) != (da > 0.0)) refine(ka, kb);
        ka = kb;
        da = db;
      }
      if (roots.size() == before &&
          minAbs < 1e-8 * std::max(std::abs(dPrev2), std::abs(d))) {
        throw RootFindingError("near-degenerate root pair in matching determinant", kPrev2, k);
      }
      std::sort(roots.begin(), roots.end());
      roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    }
    kPrev2 = kPrev;
    dPrev2 = dPrev;
    kPrev = k;
    dPrev = d;
    if (k >= kEnd) break;
  }
  if (roots.size() < nModes) {
    std::ostringstream msg;
    msg << "found " << roots.size() << " of " << nModes << " modes while scanning k in ["
        << kStart << ", " << kEnd << "]";
    if (std::isfinite(kLimit)) msg << " (bound-state limit)";
    throw RootFindingError(msg.str(), kStart, kEnd);
  }
  roots.resize(nModes);

  std::vector<Mode> modes;
  modes.reserve(nModes);
  for (std::size_t i = 0; i < nModes; ++i) {
    modes.push_back(buildMode(medium, scenario, roots[i], int(i) + 1, options.quadrature));
  }
  return modes;
}

double evalMode(const Mode& mode, const Scenario& scenario, double x) {
  MaterialProfile material(scenario);
  Interval dom = material.domain();
  if (!(x >= dom.lo && x <= dom.hi)) {
    std::ostringstream msg;
    msg << "x = " << x << " outside the mode domain [" << dom.lo << ", " << dom.hi << "]";
    throw DomainError(msg.str());
  }
  return mode.value(x);
}

double weightedOverlap(const Mode& a, const Mode& b, const QuadratureOptions& options) {
  std::vector<double> breaks = a.nodes();
  for (double x : b.nodes()) breaks.push_back(x);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  auto integrand = [&](double x) {
    const ModeSegment* s = findSegment(a.segments, x);
    double eps = s ? s->eps : 0.0;
    return eps * a.value(x) * b.value(x);
  };
  double total = integrate(integrand, breaks, options);
  if (a.leftTail && b.leftTail) {
    total += a.leftTail->eps * a.leftTail->amplitude * b.leftTail->amplitude /
             (a.leftTail->kappa + b.leftTail->kappa);
  }
  if (a.rightTail && b.rightTail) {
    total += a.rightTail->eps * a.rightTail->amplitude * b.rightTail->amplitude /
             (a.rightTail->kappa + b.rightTail->kappa);
  }
  return total;
}

std::vector<std::vector<double>> orthonormalityCheck(const std::vector<Mode>& modes,
                                                     const Scenario& scenario,
                                                     const QuadratureOptions& options) {
  (void)scenario;
  std::size_t n = modes.size();
  std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double overlap = weightedOverlap(modes[i], modes[j], options);
      out[i][j] = std::abs(2.0 * modes[i].omega0 * overlap - (i == j ? 1.0 : 0.0));
    }
  }
  return out;
}

}  // namespace dce
