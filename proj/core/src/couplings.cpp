#include "dce/couplings.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/interpolators/barycentric_rational.hpp>
#include <boost/math/special_functions/chebyshev.hpp>
#include <numbers>
#include <sstream>

#include "dce/error.hpp"

namespace dce {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// 1-D interpolant over one smooth piece of the time grid. Floater-Hormann
// rationals are infinitely smooth between the knots, so adaptive steps are
// not pinned to the grid spacing. When the rational is resolved by a short
// Chebyshev series it is evaluated through that series instead.
class Piece {
 public:
  Piece(std::vector<double> t, std::vector<double> y) {
    t0_ = t.front();
    t1_ = t.back();
    if (t.size() >= 4) {
      std::size_t order = std::min<std::size_t>(kOrder, t.size() - 1);
      rational_ = std::make_shared<boost::math::barycentric_rational<double>>(std::move(t), std::move(y),
                                                                              order);
      fitChebyshev();
    } else {
      t_ = std::move(t);
      y_ = std::move(y);
    }
  }

  double operator()(double t) const {
    t = std::clamp(t, t0_, t1_);
    if (!cheb_.empty()) {
      double x = (2.0 * t - t0_ - t1_) / (t1_ - t0_);
      return boost::math::chebyshev_clenshaw_recurrence(cheb_.data(), cheb_.size(), x);
    }
    if (rational_) return (*rational_)(t);
    if (t_.size() == 1) return y_.front();
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t j = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - t_.begin(), 1), t_.size() - 1);
    double w = (t - t_[j - 1]) / (t_[j] - t_[j - 1]);
    return (1.0 - w) * y_[j - 1] + w * y_[j];
  }

 private:
  static constexpr std::size_t kOrder = 5;
  static constexpr std::size_t kNodes = 96;

  void fitChebyshev() {
    constexpr double pi = std::numbers::pi;
    std::vector<double> f(kNodes);
    for (std::size_t j = 0; j < kNodes; ++j) {
      double x = std::cos(pi * (double(j) + 0.5) / kNodes);
      f[j] = (*rational_)(0.5 * (t0_ + t1_) + 0.5 * (t1_ - t0_) * x);
    }
    std::vector<double> c(kNodes);
    double scale = 0.0;
    for (std::size_t k = 0; k < kNodes; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < kNodes; ++j) s += f[j] * std::cos(pi * double(k) * (double(j) + 0.5) / kNodes);
      c[k] = 2.0 * s / kNodes;
      scale = std::max(scale, std::abs(c[k]));
    }
    double tol = 1e-9 * scale;  // below the rational's own interpolation error
    std::size_t keep = kNodes;
    while (keep > 1 && std::abs(c[keep - 1]) <= tol) --keep;
    if (keep + 8 > kNodes) return;  // not resolved, keep the rational
    c.resize(keep);
    cheb_ = std::move(c);
  }

  double t0_ = 0.0;
  double t1_ = 0.0;
  std::shared_ptr<boost::math::barycentric_rational<double>> rational_;
  std::vector<double> cheb_;
  std::vector<double> t_;
  std::vector<double> y_;
};

// Interpolant over a grid split into smooth pieces at repeated times.
class PiecewiseSeries {
 public:
  PiecewiseSeries() = default;
  PiecewiseSeries(const std::vector<std::vector<double>>& pieceTimes,
                  const std::vector<std::vector<double>>& pieceValues) {
    for (std::size_t p = 0; p < pieceTimes.size(); ++p) {
      starts_.push_back(pieceTimes[p].front());
      pieces_.emplace_back(pieceTimes[p], pieceValues[p]);
    }
  }

  double operator()(double t) const {
    auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
    std::size_t p = it == starts_.begin() ? 0 : std::size_t(it - starts_.begin()) - 1;
    return pieces_[p](t);
  }

 private:
  std::vector<double> starts_;
  std::vector<Piece> pieces_;
};

double oneMinusSinc(double v) {
  // v - sin v, by series for small v to avoid cancellation.
  if (std::abs(v) > 0.5) return v - std::sin(v);
  double term = v * v * v / 6.0;
  double sum = 0.0;
  for (int j = 1; j < 30 && std::abs(term) > 1e-18 * std::abs(sum); ++j) {
    sum += term;
    term *= -v * v / double((2 * j + 2) * (2 * j + 3));
  }
  return sum;
}

std::vector<double> modeBreaks(const Mode& a, const Mode& b, const Interval& region) {
  std::vector<double> br{region.lo, region.hi};
  for (const Mode* m : {&a, &b}) {
    for (double x : m->nodes()) {
      if (x > region.lo && x < region.hi) br.push_back(x);
    }
  }
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  return br;
}

}  // namespace

std::string_view toString(Provenance p) {
  switch (p) {
    case Provenance::quadrature: return "quadrature";
    case Provenance::wallClosedForm: return "wallClosedForm";
    case Provenance::plasmaClosedForm: return "plasmaClosedForm";
    case Provenance::instantaneousMode: return "instantaneousMode";
    case Provenance::syntheticDrive: return "syntheticDrive";
  }
  return "unknown";
}

void CouplingSample::resize(std::size_t size) {
  n = size;
  omega.assign(n, 0.0);
  mu.assign(n * n, 0.0);
  g.assign(n * n, {0.0, 0.0});
}

CouplingSet::CouplingSet(std::vector<double> omega0, Provenance provenance, Sampler sampler,
                         double tMin, double tMax, BreakpointFn breakpoints)
    : omega0_(std::move(omega0)),
      provenance_(provenance),
      sampler_(std::make_shared<const Sampler>(std::move(sampler))),
      tMin_(tMin),
      tMax_(tMax),
      breakpoints_(std::move(breakpoints)) {
  if (omega0_.empty()) throw Error("coupling set needs at least one mode");
}

std::vector<double> CouplingSet::breakpoints(double t0, double t1) const {
  if (!breakpoints_) return {};
  std::vector<double> out = breakpoints_(t0, t1);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void CouplingSet::checkTime(double t) const {
  if (t >= tMin_ && t <= tMax_) return;
  double slack = 1e-12 * std::max({1.0, std::abs(tMin_), std::isfinite(tMax_) ? std::abs(tMax_) : 0.0});
  if (t < tMin_ - slack || t > tMax_ + slack) {
    std::ostringstream msg;
    msg << "coupling requested at t = " << t << " outside [" << tMin_ << ", " << tMax_ << "]";
    throw DomainError(msg.str());
  }
}

void CouplingSet::sample(double t, CouplingSample& out) const {
  checkTime(t);
  if (out.n != size()) out.resize(size());
  (*sampler_)(t, out);
}

CouplingSample CouplingSet::sample(double t) const {
  CouplingSample s;
  s.resize(size());
  sample(t, s);
  return s;
}

double CouplingSet::omegaAt(std::size_t a, double t) const { return sample(t).omega.at(a); }

double CouplingSet::deltaOmegaAt(std::size_t a, double t) const {
  CouplingSample s = sample(t);
  return s.mu.at(a * s.n + a);
}

double CouplingSet::muAt(std::size_t a, std::size_t b, double t) const {
  CouplingSample s = sample(t);
  return s.mu.at(a * s.n + b);
}

std::complex<double> CouplingSet::gAt(std::size_t a, std::size_t b, double t) const {
  CouplingSample s = sample(t);
  return s.g.at(a * s.n + b);
}

CouplingSet CouplingSet::restrict(std::vector<std::size_t> modes) const {
  for (std::size_t m : modes) {
    if (m >= size()) throw Error("mode index out of range in CouplingSet::restrict");
  }
  std::vector<double> w0;
  for (std::size_t m : modes) w0.push_back(omega0_[m]);
  auto inner = sampler_;
  std::size_t full = size();
  auto sampler = [inner, modes, full](double t, CouplingSample& out) {
    CouplingSample buf;
    buf.resize(full);
    (*inner)(t, buf);
    std::size_t n = modes.size();
    for (std::size_t i = 0; i < n; ++i) {
      out.omega[i] = buf.omega[modes[i]];
      for (std::size_t j = 0; j < n; ++j) {
        out.mu[i * n + j] = buf.mu[modes[i] * full + modes[j]];
        out.g[i * n + j] = buf.g[modes[i] * full + modes[j]];
      }
    }
  };
  CouplingSet out(std::move(w0), provenance_, sampler, tMin_, tMax_, breakpoints_);
  out.warnings = warnings;
  return out;
}

CouplingSet CouplingSet::diagonalOnly() const {
  auto inner = sampler_;
  auto sampler = [inner](double t, CouplingSample& out) {
    (*inner)(t, out);
    for (std::size_t i = 0; i < out.n; ++i) {
      for (std::size_t j = 0; j < out.n; ++j) {
        if (i == j) continue;
        out.mu[i * out.n + j] = 0.0;
        out.g[i * out.n + j] = 0.0;
      }
    }
  };
  CouplingSet out(omega0_, provenance_, sampler, tMin_, tMax_, breakpoints_);
  out.warnings = warnings;
  return out;
}

double gEps(const Mode& a, const Mode& b, const MaterialProfile& material, double t,
            const QuadratureOptions& options) {
  double total = 0.0;
  for (const Interval& region : material.deltaRegion(t)) {
    std::vector<double> br = modeBreaks(a, b, region);
    auto integrand = [&](double x) {
      double e0 = material.eps(x, 0.0);
      return e0 * e0 * material.invEpsDelta(x, t) * a.value(x) * b.value(x);
    };
    total += integrate(integrand, br, options);
  }
  return 0.5 * a.omega0 * b.omega0 * total;
}

double gM(const Mode& a, const Mode& b, const MaterialProfile& material, double t,
          const QuadratureOptions& options) {
  double total = 0.0;
  for (const Interval& region : material.deltaRegion(t)) {
    std::vector<double> br = modeBreaks(a, b, region);
    auto integrand = [&](double x) { return material.m2Delta(x, t) * a.value(x) * b.value(x); };
    total += integrate(integrand, br, options);
  }
  return 0.5 * total;
}

std::vector<double> samplingGrid(double tEnd, double period, std::size_t perPeriod,
                                 std::span<const double> breakpoints, std::size_t minPoints) {
  if (!(tEnd > 0.0)) throw Error("sampling grid needs tEnd > 0");
  std::size_t n = std::max<std::size_t>(minPoints, 4);
  if (period > 0.0 && perPeriod > 0) {
    n = std::max<std::size_t>(n, std::size_t(std::ceil(tEnd / period * double(perPeriod))) + 1);
  }
  std::vector<double> inner;
  for (double b : breakpoints) {
    if (b > 0.0 && b < tEnd) inner.push_back(b);
  }
  double gap = 1e-6 * tEnd / double(n);
  std::vector<double> grid;
  grid.reserve(n + 2 * inner.size());
  for (std::size_t i = 0; i < n; ++i) {
    double t = i + 1 == n ? tEnd : tEnd * double(i) / double(n - 1);
    bool crowded = std::any_of(inner.begin(), inner.end(),
                               [&](double b) { return std::abs(b - t) < gap; });
    if (!crowded) grid.push_back(t);
  }
  for (double b : inner) {
    grid.push_back(b);
    grid.push_back(b);
  }
  std::sort(grid.begin(), grid.end());
  return grid;
}

CouplingSet couplingsByQuadrature(const std::vector<Mode>& modes, const MaterialProfile& material,
                                  std::span<const double> times, bool offDiagonal,
                                  const QuadratureOptions& options) {
  if (modes.empty()) throw Error("couplingsByQuadrature needs at least one mode");
  if (times.size() < 2) throw Error("couplingsByQuadrature needs at least two grid times");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i] < times[i - 1]) throw Error("coupling time grid must be monotone");
    if (i >= 2 && times[i] == times[i - 1] && times[i - 1] == times[i - 2]) {
      throw Error("coupling time grid repeats a time more than twice");
    }
  }
  // Split the grid into smooth pieces at repeated times.
  std::vector<std::vector<double>> pieceTimes(1);
  std::vector<std::vector<double>> evalTimes(1);
  std::vector<double> jumps;
  for (std::size_t i = 0; i < times.size(); ++i) {
    // The last time belongs to the piece on its left.
    bool leftCopy = i + 1 == times.size() || times[i + 1] == times[i];
    bool rightCopy = i > 0 && times[i - 1] == times[i];
    if (rightCopy) {
      pieceTimes.emplace_back();
      evalTimes.emplace_back();
      jumps.push_back(times[i]);
    }
    pieceTimes.back().push_back(times[i]);
    evalTimes.back().push_back(leftCopy ? std::nextafter(times[i], -std::numeric_limits<double>::infinity())
                                        : times[i]);
  }

  std::size_t n = modes.size();
  struct Pair {
    std::size_t a;
    std::size_t b;
  };
  std::vector<Pair> pairs;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      if (a == b || offDiagonal) pairs.push_back({a, b});
    }
  }

  std::vector<PiecewiseSeries> seriesEps(pairs.size());
  std::vector<PiecewiseSeries> seriesM(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const Mode& ma = modes[pairs[p].a];
    const Mode& mb = modes[pairs[p].b];
    std::vector<std::vector<double>> ve(pieceTimes.size()), vm(pieceTimes.size());
    for (std::size_t k = 0; k < pieceTimes.size(); ++k) {
      for (double t : evalTimes[k]) {
        ve[k].push_back(gEps(ma, mb, material, t, options));
        vm[k].push_back(gM(ma, mb, material, t, options));
      }
    }
    seriesEps[p] = PiecewiseSeries(pieceTimes, ve);
    seriesM[p] = PiecewiseSeries(pieceTimes, vm);
  }

  std::vector<double> w0;
  for (const auto& m : modes) w0.push_back(m.omega0);
  auto sampler = [w0, pairs, seriesEps, seriesM](double t, CouplingSample& out) {
    std::size_t nn = out.n;
    std::fill(out.mu.begin(), out.mu.end(), 0.0);
    std::fill(out.g.begin(), out.g.end(), std::complex<double>{});
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      double ge = seriesEps[p](t);
      double gm = seriesM[p](t);
      double mu = 2.0 * (ge + gm);
      std::complex<double> g = -kI * (-ge + gm);
      std::size_t a = pairs[p].a, b = pairs[p].b;
      out.mu[a * nn + b] = out.mu[b * nn + a] = mu;
      out.g[a * nn + b] = out.g[b * nn + a] = g;
    }
    for (std::size_t a = 0; a < nn; ++a) out.omega[a] = w0[a] + out.mu[a * nn + a];
  };
  auto jumpsIn = [jumps](double t0, double t1) {
    std::vector<double> out;
    for (double j : jumps) {
      if (j >= t0 && j <= t1) out.push_back(j);
    }
    return out;
  };
  return CouplingSet(w0, Provenance::quadrature, sampler, times.front(), times.back(), jumpsIn);
}

double sinSquaredIntegral(double k, double xi, double d) {
  if (d == 0.0) return 0.0;
  double kd = k * d;
  double half = std::sin(0.5 * k * (d + 2.0 * xi));
  return (oneMinusSinc(kd) + std::sin(kd) * 2.0 * half * half) / (2.0 * k);
}

CouplingSet wallClosedForm(const WallScenario& scenario, const Mode& mode) {
  scenario.validate();
  double a2 = mode.amps.A * mode.amps.A;
  double w = mode.omega0;
  double cm = 0.5 * scenario.m2 * a2;
  double ce = 0.5 * w * w * scenario.eps0 * (scenario.eps0 / scenario.eps1 - 1.0) * a2;
  double k = mode.k;
  double xi = mode.xi;
  TimeProfile delta = scenario.displacement;
  double delta1 = scenario.delta1;
  auto sampler = [=](double t, CouplingSample& out) {
    double d = t == 0.0 ? 0.0 : delta(t);
    if (d < 0.0 || d > delta1) throw ScenarioError("wall displacement outside [0, delta1]");
    double integral = sinSquaredIntegral(k, xi, d);
    double ge = ce * integral;
    double gm = cm * integral;
    out.mu[0] = 2.0 * (ge + gm);
    out.g[0] = -kI * (-ge + gm);
    out.omega[0] = w + out.mu[0];
  };
  return CouplingSet({w}, Provenance::wallClosedForm, sampler, 0.0,
                     std::numeric_limits<double>::infinity(),
                     [delta](double t0, double t1) { return delta.breakpoints(t0, t1); });
}

double placementFactor(const PlasmaScenario& scenario, double k) {
  double l = scenario.slabPosition;
  double d = scenario.slabThickness;
  double tol = 1e-12 * scenario.length;
  if (l <= tol || l + d >= scenario.length - tol) return (k * d) * (k * d) / 3.0;
  double s = std::sin(k * l);
  return s * s;
}

PlasmaDisplacements plasmaDisplacements(const PlasmaScenario& scenario, const Mode& mode, double t) {
  double place = placementFactor(scenario, mode.k);
  double e10 = scenario.eps1.initialValue();
  double e1t = scenario.eps1(t);
  double d = scenario.slabThickness;
  PlasmaDisplacements out;
  out.deltaEps = -d * (e10 / scenario.eps0) * (1.0 - e10 / e1t) * place;
  out.deltaM = d * scenario.mp2(t) / (scenario.eps0 * mode.omega0 * mode.omega0) * place;
  return out;
}

CouplingSet plasmaClosedForm(const PlasmaScenario& scenario, const Mode& mode) {
  scenario.validate();
  double w = mode.omega0;
  double length = scenario.length;
  PlasmaScenario sc = scenario;
  Mode m = mode;
  auto sampler = [sc, m, w, length](double t, CouplingSample& out) {
    PlasmaDisplacements dd = plasmaDisplacements(sc, m, t);
    out.mu[0] = w * (dd.deltaEps + dd.deltaM) / length;
    out.g[0] = -0.5 * kI * w * (-dd.deltaEps + dd.deltaM) / length;
    out.omega[0] = w + out.mu[0];
  };
  auto br = [sc](double t0, double t1) {
    std::vector<double> out = sc.mp2.breakpoints(t0, t1);
    for (double b : sc.eps1.breakpoints(t0, t1)) out.push_back(b);
    return out;
  };
  CouplingSet set({w}, Provenance::plasmaClosedForm, sampler, 0.0,
                  std::numeric_limits<double>::infinity(), br);

  double worst = 0.0;
  for (double e1 : {scenario.eps1.minValue(), scenario.eps1.maxValue()}) {
    for (double mp2 : {scenario.mp2.minValue(), scenario.mp2.maxValue()}) {
      double kp2 = e1 * w * w - scenario.kPerp * scenario.kPerp - mp2;
      worst = std::max(worst, std::sqrt(std::abs(kp2)) * scenario.slabThickness);
    }
  }
  if (worst > 0.3) {
    std::ostringstream msg;
    msg << "mode " << mode.index << ": |k'| delta reaches " << worst
        << " > 0.3; thin-slab closed form unreliable, use the quadrature coefficients";
    set.warnings.push_back(msg.str());
  }
  return set;
}

CouplingSet syntheticDrive(double omega0, double meanDeltaOmega, double driveOmega) {
  if (!(omega0 > 0.0)) throw Error("synthetic drive needs omega0 > 0");
  auto sampler = [=](double t, CouplingSample& out) {
    double dw = meanDeltaOmega * (1.0 - std::cos(driveOmega * t));
    out.mu[0] = dw;
    out.g[0] = -0.5 * kI * dw;
    out.omega[0] = omega0 + dw;
  };
  return CouplingSet({omega0}, Provenance::syntheticDrive, sampler);
}

CouplingSet instantaneousFromStandard(const CouplingSet& standard, std::span<const double> times,
                                      double driveOmega) {
  std::size_t npts = times.size();
  if (npts < 5) throw Error("instantaneous coefficients need at least 5 grid points");
  double h = (times.back() - times.front()) / double(npts - 1);
  for (std::size_t i = 1; i < npts; ++i) {
    if (std::abs(times[i] - times[i - 1] - h) > 1e-9 * h) {
      throw Error("instantaneous coefficients need a uniform time grid");
    }
  }
  if (driveOmega > 0.0) {
    double perPeriod = 2.0 * std::numbers::pi / driveOmega / h;
    if (perPeriod < 32.0 * (1.0 - 1e-12)) {
      std::ostringstream msg;
      msg << "time grid too coarse for g': " << perPeriod << " points per drive period (need 32)";
      throw Error(msg.str());
    }
  }
  std::size_t n = standard.size();
  std::vector<std::vector<std::complex<double>>> g(n, std::vector<std::complex<double>>(npts));
  CouplingSample s;
  s.resize(n);
  for (std::size_t i = 0; i < npts; ++i) {
    standard.sample(times[i], s);
    for (std::size_t a = 0; a < n; ++a) g[a][i] = s.g[a * n + a];
  }
  std::vector<double> t(times.begin(), times.end());
  std::vector<PiecewiseSeries> dRe(n), dIm(n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto& ga = g[a];
    std::vector<double> re(npts), im(npts);
    for (std::size_t i = 0; i < npts; ++i) {
      std::complex<double> d;
      if (i == 0) {
        d = (-3.0 * ga[0] + 4.0 * ga[1] - ga[2]) / (2.0 * h);
      } else if (i == npts - 1) {
        d = (3.0 * ga[i] - 4.0 * ga[i - 1] + ga[i - 2]) / (2.0 * h);
      } else if (i == 1 || i == npts - 2) {
        d = (ga[i + 1] - ga[i - 1]) / (2.0 * h);
      } else {
        d = (ga[i - 2] - 8.0 * ga[i - 1] + 8.0 * ga[i + 1] - ga[i + 2]) / (12.0 * h);
      }
      re[i] = d.real();
      im[i] = d.imag();
    }
    dRe[a] = PiecewiseSeries({t}, {re});
    dIm[a] = PiecewiseSeries({t}, {im});
  }
  auto sampler = [standard, dRe, dIm](double tt, CouplingSample& out) {
    standard.sample(tt, out);
    std::size_t nn = out.n;
    for (std::size_t a = 0; a < nn; ++a) {
      for (std::size_t b = 0; b < nn; ++b) {
        if (a == b) continue;
        out.mu[a * nn + b] = 0.0;
        out.g[a * nn + b] = 0.0;
      }
      std::complex<double> gdot{dRe[a](tt), dIm[a](tt)};
      out.g[a * nn + a] = kI * gdot / (2.0 * out.omega[a]);
    }
  };
  CouplingSet out(standard.omega0(), Provenance::instantaneousMode, sampler, times.front(),
                  times.back());
  out.warnings = standard.warnings;
  return out;
}

FourierComponent fourierComponent(const CouplingSet& c, double driveOmega, std::size_t mode,
                                  const QuadratureOptions& options) {
  if (!(driveOmega > 0.0)) throw Error("Fourier component needs a positive drive frequency");
  if (mode >= c.size()) throw Error("mode index out of range in fourierComponent");
  double period = 2.0 * std::numbers::pi / driveOmega;
  double slack = 1e-12 * period;
  if (c.tMin() > slack || c.tMax() < period - slack) {
    std::ostringstream msg;
    msg << "coupling domain [" << c.tMin() << ", " << c.tMax() << "] does not cover one period T = "
        << period;
    throw Error(msg.str());
  }
  const double tEnd = std::min(period, c.tMax());
  constexpr int kPanels = 64;
  std::vector<double> br;
  for (int i = 0; i <= kPanels; ++i) br.push_back(tEnd * double(i) / kPanels);
  for (double b : c.breakpoints(0.0, tEnd)) br.push_back(b);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());

  std::size_t n = c.size();
  auto component = [&](auto&& pick) {
    return integrate(
        [&](double t) {
          thread_local CouplingSample s;
          c.sample(t, s);
          return pick(t, s);
        },
        br, options);
  };
  FourierComponent out;
  out.meanDeltaOmega =
      component([&](double, const CouplingSample& s) { return s.mu[mode * n + mode]; }) / period;
  double re = component([&](double t, const CouplingSample& s) {
    std::complex<double> v = s.g[mode * n + mode] * std::exp(kI * driveOmega * t);
    return v.real();
  });
  double im = component([&](double t, const CouplingSample& s) {
    std::complex<double> v = s.g[mode * n + mode] * std::exp(kI * driveOmega * t);
    return v.imag();
  });
  out.gOmega = std::complex<double>(re, im) / period;
  return out;
}

}  // namespace dce
