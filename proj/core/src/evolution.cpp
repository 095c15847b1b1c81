#include "dce/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dce/error.hpp"

namespace dce {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

std::vector<double> periodStops(double tEnd, double period) {
  std::vector<double> stops;
  if (period > 0.0) {
    for (long k = 1;; ++k) {
      double t = double(k) * period;
      if (t >= tEnd * (1.0 - 1e-14)) break;
      stops.push_back(t);
    }
  }
  return stops;
}

// Integrates over [0, tEnd] either in one pass (forced stops at the drive
// period) or period by period with a projection applied between periods.
template <class Project>
OdeResult runSegments(const OdeRhs& rhs, std::vector<double> y0, double tEnd,
                      const std::vector<double>& outputs, std::vector<double> stops,
                      const EvolutionOptions& options, const OdeObserver& observer,
                      Project&& project) {
  if (!options.symplecticProjection || options.drivePeriod <= 0.0) {
    return integrateDop853(rhs, y0, 0.0, tEnd, outputs, stops, options.ode, observer);
  }
  std::vector<double> edges{0.0};
  for (double s : periodStops(tEnd, options.drivePeriod)) edges.push_back(s);
  edges.push_back(tEnd);
  OdeResult all;
  all.dimension = y0.size();
  std::size_t next = 0;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    double a = edges[e], b = edges[e + 1];
    std::vector<double> outs;
    while (next < outputs.size() && outputs[next] <= b) {
      if (outputs[next] > a || e == 0) outs.push_back(outputs[next]);
      ++next;
    }
    std::vector<double> inner;
    for (double s : stops) {
      if (s > a && s < b) inner.push_back(s);
    }
    bool extra = outs.empty() || outs.back() != b;
    if (extra) outs.push_back(b);
    OdeResult seg = integrateDop853(rhs, y0, a, b, outs, inner, options.ode, observer);
    std::size_t keep = seg.times.size() - (extra ? 1 : 0);
    all.times.insert(all.times.end(), seg.times.begin(), seg.times.begin() + keep);
    all.states.insert(all.states.end(), seg.states.begin(), seg.states.begin() + keep * all.dimension);
    all.stats.steps += seg.stats.steps;
    all.stats.accepted += seg.stats.accepted;
    all.stats.rejected += seg.stats.rejected;
    all.stats.rhsCalls += seg.stats.rhsCalls;
    auto last = seg.state(seg.times.size() - 1);
    y0.assign(last.begin(), last.end());
    project(y0);
  }
  return all;
}

}  // namespace

SqueezeDecomposition squeezeOf(const BogoliubovState& s) {
  SqueezeDecomposition d;
  d.r = std::asinh(std::abs(s.B));
  d.phiA = std::arg(s.A);
  d.phiB = std::abs(s.B) > 0.0 ? std::arg(s.B) : 0.0;
  d.lambda = std::polar(d.r, d.phiA - d.phiB);
  return d;
}

BogoliubovState fromSqueeze(const SqueezeDecomposition& d, double t) {
  BogoliubovState s;
  s.t = t;
  s.A = std::polar(std::cosh(d.r), d.phiA);
  s.B = std::polar(std::sinh(d.r), d.phiB);
  s.phiA = d.phiA;
  return s;
}

double photonNumber(const BogoliubovState& s) { return std::norm(s.B); }

double invariantResidual(const BogoliubovState& s) { return std::norm(s.A) - std::norm(s.B) - 1.0; }

std::vector<double> Trajectory::times() const {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s.t);
  return out;
}

std::vector<double> Trajectory::photonNumbers() const {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(photonNumber(s));
  return out;
}

std::vector<double> outputGrid(double tEnd, const EvolutionOptions& options) {
  if (!options.outputTimes.empty()) {
    std::vector<double> out = options.outputTimes;
    std::sort(out.begin(), out.end());
    return out;
  }
  std::size_t n = 1001;
  if (options.drivePeriod > 0.0) {
    double periods = tEnd / options.drivePeriod;
    n = std::size_t(std::ceil(periods * double(std::max<std::size_t>(options.samplesPerPeriod, 2)))) + 1;
  }
  n = std::max<std::size_t>(n, 2);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = tEnd * double(i) / double(n - 1);
  out.back() = tEnd;
  return out;
}

Trajectory integrateMaster(const CouplingSet& couplings, std::size_t mode, double tEnd,
                           const EvolutionOptions& options) {
  if (mode >= couplings.size()) throw Error("mode index out of range in integrateMaster");
  if (!(tEnd > 0.0)) throw Error("integrateMaster needs tEnd > 0");
  if (tEnd > couplings.tMax() * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "couplings end at t = " << couplings.tMax() << " before tEnd = " << tEnd;
    throw Error(msg.str());
  }
  const std::size_t n = couplings.size();
  CouplingSample sample;
  sample.resize(n);
  // Integrated in the frame rotating at omega0: a = A e^{i w0 t}, b = B e^{-i w0 t}.
  // The state then only moves at the slow rates delta omega and g.
  const double w0 = couplings.omega0()[mode];
  OdeRhs rhs = [&](double t, const double* y, double* dy) {
    couplings.sample(t, sample);
    double w = sample.omega[mode];
    cd g = sample.g[mode * n + mode] * std::polar(1.0, 2.0 * w0 * t);
    cd a{y[0], y[1]};
    cd b{y[2], y[3]};
    cd da = -kI * (w - w0) * a + 2.0 * g * b;
    cd db = kI * (w - w0) * b + 2.0 * std::conj(g) * a;
    double twist = std::imag(2.0 * g * b * std::conj(a)) / std::norm(a);
    dy[0] = da.real();
    dy[1] = da.imag();
    dy[2] = db.real();
    dy[3] = db.imag();
    dy[4] = -w + twist;
    dy[5] = -0.5 * w + twist;
  };

  double maxResidual = 0.0;
  const double drift = options.driftFactor * options.ode.relTol;
  const double cycle = 2.0 * std::numbers::pi / couplings.omega0()[mode];
  OdeObserver observer = [&](double t, const double* y) {
    double a2 = y[0] * y[0] + y[1] * y[1];
    double b2 = y[2] * y[2] + y[3] * y[3];
    double res = std::abs(a2 - b2 - 1.0);
    maxResidual = std::max(maxResidual, res);
    if (!std::isfinite(res) || res > drift * (a2 + b2) * (1.0 + t / cycle)) {
      std::ostringstream msg;
      msg << "symplectic invariant drift |A|^2-|B|^2-1 = " << (a2 - b2 - 1.0) << " at t = " << t
          << " exceeds " << options.driftFactor << " x tolerance";
      throw IntegrationError(msg.str());
    }
  };

  std::vector<double> outputs = outputGrid(tEnd, options);
  std::vector<double> stops = periodStops(tEnd, options.drivePeriod);
  for (double b : couplings.breakpoints(0.0, tEnd)) stops.push_back(b);
  auto project = [](std::vector<double>& y) {
    double b2 = y[2] * y[2] + y[3] * y[3];
    double a = std::hypot(y[0], y[1]);
    double s = std::sqrt(1.0 + b2) / a;
    y[0] *= s;
    y[1] *= s;
  };
  OdeResult res = runSegments(rhs, {1.0, 0.0, 0.0, 0.0, 0.0, 0.0}, tEnd, outputs, stops, options,
                              observer, project);

  Trajectory traj;
  traj.stats = res.stats;
  traj.maxResidual = maxResidual;
  traj.states.reserve(res.times.size());
  for (std::size_t i = 0; i < res.times.size(); ++i) {
    auto y = res.state(i);
    BogoliubovState s;
    s.t = res.times[i];
    cd turn = std::polar(1.0, -w0 * s.t);
    s.A = cd{y[0], y[1]} * turn;
    s.B = cd{y[2], y[3]} * std::conj(turn);
    s.phiA = y[4];
    s.K = y[5];
    traj.maxResidual = std::max(traj.maxResidual, std::abs(invariantResidual(s)));
    traj.states.push_back(s);
  }
  return traj;
}

std::vector<double> MultimodeState::photonNumbers() const {
  std::vector<double> out(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) out[a] += std::norm(B[a * n + b]);
  }
  return out;
}

double MultimodeState::symplecticResidual() const {
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = 0; c < n; ++c) {
      cd first = 0.0, second = 0.0;
      for (std::size_t b = 0; b < n; ++b) {
        first += A[a * n + b] * std::conj(A[c * n + b]) - std::conj(B[a * n + b]) * B[c * n + b];
        second += A[a * n + b] * std::conj(B[c * n + b]) - std::conj(B[a * n + b]) * A[c * n + b];
      }
      if (a == c) first -= 1.0;
      worst = std::max({worst, std::abs(first), std::abs(second)});
    }
  }
  return worst;
}

MultimodeTrajectory integrateMultimode(const CouplingSet& couplings, double tEnd,
                                       const EvolutionOptions& options) {
  if (!(tEnd > 0.0)) throw Error("integrateMultimode needs tEnd > 0");
  if (tEnd > couplings.tMax() * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "couplings end at t = " << couplings.tMax() << " before tEnd = " << tEnd;
    throw Error(msg.str());
  }
  const std::size_t n = couplings.size();
  const std::size_t nn = n * n;
  CouplingSample sample;
  sample.resize(n);
  auto unpack = [&](const double* y, std::size_t offset, std::size_t i) {
    return cd{y[2 * (offset + i)], y[2 * (offset + i) + 1]};
  };
  OdeRhs rhs = [&](double t, const double* y, double* dy) {
    couplings.sample(t, sample);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t c = 0; c < n; ++c) {
        cd dA = 0.0, dB = 0.0;
        for (std::size_t b = 0; b < n; ++b) {
          double m = a == b ? sample.omega[a] : sample.mu[a * n + b];
          cd g = sample.g[a * n + b];
          cd Abc = unpack(y, 0, b * n + c);
          cd Bbc = unpack(y, nn, b * n + c);
          dA += -kI * m * Abc + 2.0 * g * Bbc;
          dB += kI * m * Bbc + 2.0 * std::conj(g) * Abc;
        }
        std::size_t i = a * n + c;
        dy[2 * i] = dA.real();
        dy[2 * i + 1] = dA.imag();
        dy[2 * (nn + i)] = dB.real();
        dy[2 * (nn + i) + 1] = dB.imag();
      }
    }
  };
  auto toState = [&](double t, const double* y) {
    MultimodeState s;
    s.t = t;
    s.n = n;
    s.A.resize(nn);
    s.B.resize(nn);
    for (std::size_t i = 0; i < nn; ++i) {
      s.A[i] = unpack(y, 0, i);
      s.B[i] = unpack(y, nn, i);
    }
    return s;
  };
  double maxResidual = 0.0;
  const double drift = options.driftFactor * options.ode.relTol;
  const double cycle = 2.0 * std::numbers::pi /
                       *std::max_element(couplings.omega0().begin(), couplings.omega0().end());
  OdeObserver observer = [&](double t, const double* y) {
    MultimodeState s = toState(t, y);
    double res = s.symplecticResidual();
    maxResidual = std::max(maxResidual, res);
    auto np = s.photonNumbers();
    double scale = 1.0 + 2.0 * *std::max_element(np.begin(), np.end());
    if (!std::isfinite(res) || res > drift * scale * (1.0 + t / cycle)) {
      std::ostringstream msg;
      msg << "multimode symplectic residual " << res << " at t = " << t << " exceeds "
          << options.driftFactor << " x tolerance";
      throw IntegrationError(msg.str());
    }
  };

  std::vector<double> y0(4 * nn, 0.0);
  for (std::size_t a = 0; a < n; ++a) y0[2 * (a * n + a)] = 1.0;
  std::vector<double> outputs = outputGrid(tEnd, options);
  std::vector<double> stops = periodStops(tEnd, options.drivePeriod);
  for (double b : couplings.breakpoints(0.0, tEnd)) stops.push_back(b);
  auto project = [](std::vector<double>&) {};
  OdeResult res = runSegments(rhs, y0, tEnd, outputs, stops, options, observer, project);

  MultimodeTrajectory traj;
  traj.stats = res.stats;
  traj.maxResidual = maxResidual;
  for (std::size_t i = 0; i < res.times.size(); ++i) {
    traj.states.push_back(toState(res.times[i], res.state(i).data()));
    traj.maxResidual = std::max(traj.maxResidual, traj.states.back().symplecticResidual());
  }
  return traj;
}

AveragedSeries periodAverage(std::span<const double> times, std::span<const double> values,
                             double period) {
  if (times.size() != values.size()) throw Error("periodAverage: size mismatch");
  if (!(period > 0.0)) throw Error("periodAverage needs a positive period");
  AveragedSeries out;
  std::size_t n = times.size();
  if (n < 2) return out;
  // Cumulative integral of the piecewise-linear interpolant.
  std::vector<double> cum(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    cum[i] = cum[i - 1] + 0.5 * (values[i] + values[i - 1]) * (times[i] - times[i - 1]);
  }
  auto integralTo = [&](double tau) {
    auto it = std::upper_bound(times.begin(), times.end(), tau);
    std::size_t j = std::clamp<std::size_t>(std::size_t(it - times.begin()), 1, n - 1) - 1;
    double h = times[j + 1] - times[j];
    double dt = tau - times[j];
    double slope = h > 0.0 ? (values[j + 1] - values[j]) / h : 0.0;
    return cum[j] + values[j] * dt + 0.5 * slope * dt * dt;
  };
  double half = 0.5 * period;
  double lo = times.front() + half;
  double hi = times.back() - half;
  double eps = 1e-12 * period;
  for (std::size_t i = 0; i < n; ++i) {
    double t = times[i];
    if (t < lo - eps || t > hi + eps) continue;
    double a = std::max(t - half, times.front());
    double b = std::min(t + half, times.back());
    out.times.push_back(t);
    out.values.push_back((integralTo(b) - integralTo(a)) / (b - a));
  }
  return out;
}

}  // namespace dce
