#include "dce/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "dce/error.hpp"
#include "dce/material.hpp"

namespace dce {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class F>
void forEachProfile(const Scenario& s, F&& f) {
  if (const auto* w = std::get_if<WallScenario>(&s)) {
    f(w->displacement);
  } else {
    const auto& p = std::get<PlasmaScenario>(s);
    f(p.eps1);
    f(p.mp2);
  }
}

// True when every time-dependent profile repeats with the drive period.
bool repeatsWithPeriod(const Scenario& s, double period) {
  bool ok = true;
  forEachProfile(s, [&](const TimeProfile& p) {
    if (p.isStatic()) return;
    double q = p.period();
    if (!(q > 0.0) || std::abs(q - period) > 1e-12 * period) ok = false;
  });
  return ok;
}

// Extends coefficients known on [0, period] to [0, tEnd] periodically.
CouplingSet periodicExtension(const CouplingSet& base, double period, double tEnd) {
  auto inner = std::make_shared<CouplingSet>(base);
  auto sampler = [inner, period](double t, CouplingSample& out) {
    double u = std::fma(-std::floor(t / period), period, t);
    if (u < 0.0) u += period;
    inner->sample(std::min(u, period), out);
  };
  auto bps = [inner, period](double t0, double t1) {
    std::vector<double> out;
    std::vector<double> local = inner->breakpoints(0.0, period);
    long k0 = long(std::floor(t0 / period));
    long k1 = long(std::floor(t1 / period));
    for (long k = k0; k <= k1; ++k) {
      for (double b : local) {
        double t = double(k) * period + b;
        if (t >= t0 && t <= t1) out.push_back(t);
      }
    }
    return out;
  };
  CouplingSet out(base.omega0(), base.provenance(), sampler, 0.0, tEnd, bps);
  out.warnings = base.warnings;
  return out;
}

CouplingSet closedFormFor(const Scenario& bound, const Mode& mode) {
  if (const auto* w = std::get_if<WallScenario>(&bound)) return wallClosedForm(*w, mode);
  return plasmaClosedForm(std::get<PlasmaScenario>(bound), mode);
}

double runLength(const DriveSettings& d, double period) {
  if (d.nPulse < 0) throw ScenarioError("drive.nPulse must be non-negative");
  if (d.nPulse > 0) return double(d.nPulse) * period;
  if (!(d.tEnd > 0.0)) throw ScenarioError("run length undefined: set drive.nPulse or drive.tEnd > 0");
  return d.tEnd;
}

std::vector<double> uniformGrid(double tEnd, double period, std::size_t perPeriod) {
  std::size_t n = std::size_t(std::ceil(tEnd / period * double(perPeriod))) + 1;
  n = std::max<std::size_t>(n, 2);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = tEnd * double(i) / double(n - 1);
  out.back() = tEnd;
  return out;
}

// Coefficients of the driven mode in the requested formulation; index 0.
CouplingSet formulationCouplings(const Experiment& e, const ResolvedDrive& r, Formulation f) {
  CouplingSet single = r.couplings.size() == 1 ? r.couplings : r.couplings.restrict({r.modeIndex});
  if (f == Formulation::standard) return single;
  std::size_t perPeriod = std::max<std::size_t>(e.numerics.gridPerPeriod, 32);
  std::vector<double> grid = uniformGrid(r.tEnd, r.drive.T, perPeriod);
  return instantaneousFromStandard(single, grid, r.drive.Omega);
}

Trajectory integrateResolved(const Experiment& e, const ResolvedDrive& r,
                             std::vector<double> outputs = {}) {
  CouplingSet c = formulationCouplings(e, r, e.formulation);
  EvolutionOptions opts = evolutionOptions(e, r.drive);
  opts.outputTimes = std::move(outputs);
  return integrateMaster(c, 0, r.tEnd, opts);
}

}  // namespace

std::string_view toString(CouplingMethod m) {
  return m == CouplingMethod::quadrature ? "quadrature" : "closed_form";
}

CouplingMethod couplingMethodFromString(std::string_view s) {
  if (s == "quadrature") return CouplingMethod::quadrature;
  if (s == "closed_form") return CouplingMethod::closedForm;
  throw Error("unknown coupling method '" + std::string(s) + "' (expected quadrature or closed_form)");
}

std::string_view toString(Formulation f) {
  return f == Formulation::standard ? "standard" : "instantaneous";
}

Formulation formulationFromString(std::string_view s) {
  if (s == "standard") return Formulation::standard;
  if (s == "instantaneous") return Formulation::instantaneous;
  throw Error("unknown formulation '" + std::string(s) + "' (expected standard or instantaneous)");
}

std::vector<double> scenarioBreakpoints(const Scenario& scenario, double t0, double t1) {
  std::vector<double> out;
  forEachProfile(scenario, [&](const TimeProfile& p) {
    if (p.isStatic()) return;
    for (double b : p.breakpoints(t0, t1)) out.push_back(b);
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CouplingSet buildCouplings(const Experiment& e, const Scenario& bound, const std::vector<Mode>& modes,
                           double period, double tEnd) {
  if (e.method == CouplingMethod::closedForm) {
    if (e.multimode) throw ScenarioError("closed-form couplings are single-mode; use quadrature for multimode runs");
    return closedFormFor(bound, modes.at(e.mode));
  }
  MaterialProfile material = materialOf(bound);
  auto over = [&](double span) {
    std::vector<double> bps = scenarioBreakpoints(bound, 0.0, span);
    std::vector<double> grid = samplingGrid(span, period, e.numerics.gridPerPeriod, bps);
    return couplingsByQuadrature(modes, material, grid, e.multimode, e.numerics.quadrature);
  };
  if (tEnd > period && repeatsWithPeriod(bound, period)) {
    return periodicExtension(over(period), period, tEnd);
  }
  return over(tEnd);
}

ResolvedDrive resolveDrive(const Experiment& e) {
  const DriveSettings& d = e.drive;
  if (e.isSynthetic()) {
    const SyntheticSetup& s = e.synthetic;
    if (!(s.omega0 > 0.0)) throw ScenarioError("synthetic.omega0 must be positive");
    if (e.mode != 0 || e.multimode) throw ScenarioError("the synthetic drive has a single mode");
    double Omega = d.Omega ? *d.Omega : 2.0 * (s.omega0 + s.meanDeltaOmega + d.Delta);
    CouplingSet c = syntheticDrive(s.omega0, s.meanDeltaOmega, Omega);
    FourierComponent fc = fourierComponent(c, Omega, 0, e.numerics.quadrature);
    DriveSpec drive = DriveSpec::fromOmega(s.omega0, fc.meanDeltaOmega, fc.gOmega, Omega, d.nPulse);
    double tEnd = runLength(d, drive.T);
    return ResolvedDrive{drive, c, {}, std::nullopt, tEnd, 0, 1};
  }

  const Scenario& base = *e.scenario;
  validate(base);
  if (e.multimode && e.nModes < 2) throw ScenarioError("multimode runs need modes.count >= 2");
  std::size_t count = std::max(e.nModes, e.mode + 1);
  std::vector<Mode> modes = solveModes(base, count, e.numerics.modeSolver);
  double omega0 = modes[e.mode].omega0;
  std::size_t index = e.method == CouplingMethod::closedForm ? 0 : e.mode;

  double Omega = d.Omega ? *d.Omega : 2.0 * (omega0 + d.Delta);
  if (!(Omega > 0.0)) throw ScenarioError("drive frequency must be positive");
  FourierComponent fc;
  int iterations = 0;
  constexpr int kMaxIterations = 50;
  Experiment probe = e;
  probe.multimode = false;
  for (;;) {
    ++iterations;
    Scenario bound = rebound(base, Omega);
    double T = kTwoPi / Omega;
    CouplingSet one = buildCouplings(probe, bound, modes, T, T);
    std::size_t idx = probe.method == CouplingMethod::closedForm ? 0 : e.mode;
    fc = fourierComponent(one, Omega, idx, e.numerics.quadrature);
    if (d.Omega) break;
    double next = 2.0 * (omega0 + fc.meanDeltaOmega + d.Delta);
    if (!(next > 0.0)) throw ScenarioError("drive frequency became non-positive while resolving Omega");
    bool done = std::abs(next - Omega) <= 1e-14 * Omega;
    Omega = next;
    if (done) break;
    if (iterations >= kMaxIterations) {
      std::ostringstream msg;
      msg << "Omega did not converge in " << kMaxIterations << " iterations (last " << Omega << ")";
      throw Error(msg.str());
    }
  }

  // The last pass already evaluated the coefficients at the final Omega up to
  // 1e-14 relative; refresh them once Omega is fixed so everything is bound
  // to the same value.
  Scenario bound = rebound(base, Omega);
  double T = kTwoPi / Omega;
  if (!d.Omega) {
    CouplingSet one = buildCouplings(probe, bound, modes, T, T);
    fc = fourierComponent(one, Omega, index, e.numerics.quadrature);
  }
  DriveSpec drive = DriveSpec::fromOmega(omega0, fc.meanDeltaOmega, fc.gOmega, Omega, d.nPulse);
  double tEnd = runLength(d, T);
  CouplingSet c = buildCouplings(e, bound, modes, T, tEnd);
  return ResolvedDrive{drive, std::move(c), std::move(modes), bound, tEnd, index, iterations};
}

EvolutionOptions evolutionOptions(const Experiment& e, const DriveSpec& drive) {
  EvolutionOptions o;
  o.ode = e.numerics.ode;
  o.samplesPerPeriod = e.numerics.samplesPerPeriod;
  o.drivePeriod = drive.T;
  o.driftFactor = e.numerics.driftFactor;
  o.symplecticProjection = e.numerics.symplecticProjection;
  return o;
}

RunResult runExperiment(const Experiment& e) {
  if (e.multimode) throw ScenarioError("runExperiment is single-mode; use runMultimode");
  ResolvedDrive r = resolveDrive(e);
  Trajectory traj = integrateResolved(e, r);
  RwaSolution rwa = rwaSolve(r.drive, r.tEnd);
  return RunResult{std::move(r), std::move(traj), rwa};
}

MultimodeResult runMultimode(const Experiment& e) {
  Experiment m = e;
  m.multimode = true;
  m.method = CouplingMethod::quadrature;
  if (m.formulation != Formulation::standard) {
    throw ScenarioError("multimode runs use the standard formulation");
  }
  ResolvedDrive r = resolveDrive(m);
  EvolutionOptions opts = evolutionOptions(m, r.drive);
  MultimodeTrajectory traj = integrateMultimode(r.couplings, r.tEnd, opts);
  return MultimodeResult{std::move(r), std::move(traj)};
}

std::string_view toString(SweepVariable v) {
  switch (v) {
    case SweepVariable::Omega: return "Omega";
    case SweepVariable::Delta: return "Delta";
    case SweepVariable::meanDeltaOmega: return "meanDeltaOmega";
    case SweepVariable::slabPosition: return "slabPosition";
    case SweepVariable::slabThickness: return "slabThickness";
    case SweepVariable::mp2Max: return "mp2Max";
    case SweepVariable::nPulse: return "nPulse";
  }
  return "unknown";
}

SweepVariable sweepVariableFromString(std::string_view s) {
  for (SweepVariable v : {SweepVariable::Omega, SweepVariable::Delta, SweepVariable::meanDeltaOmega,
                          SweepVariable::slabPosition, SweepVariable::slabThickness,
                          SweepVariable::mp2Max, SweepVariable::nPulse}) {
    if (toString(v) == s) return v;
  }
  throw Error("unknown sweep variable '" + std::string(s) + "'");
}

std::string_view toString(SweepObservable o) {
  switch (o) {
    case SweepObservable::NGammaFinal: return "NGammaFinal";
    case SweepObservable::chi: return "chi";
    case SweepObservable::peakOmega: return "peakOmega";
  }
  return "unknown";
}

SweepObservable sweepObservableFromString(std::string_view s) {
  for (SweepObservable o : {SweepObservable::NGammaFinal, SweepObservable::chi, SweepObservable::peakOmega}) {
    if (toString(o) == s) return o;
  }
  throw Error("unknown sweep observable '" + std::string(s) + "'");
}

void SweepSpec::validate() const {
  if (nPoints < 1) throw Error("sweep needs at least one point");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw Error("sweep range must be finite");
  if (nPoints > 1 && !(hi > lo)) throw Error("sweep range needs hi > lo");
}

std::vector<double> SweepSpec::values() const {
  validate();
  std::vector<double> out(nPoints);
  if (nPoints == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < nPoints; ++i) {
    out[i] = lo + (hi - lo) * double(i) / double(nPoints - 1);
  }
  out.back() = hi;
  return out;
}

Experiment applySweepValue(const Experiment& e, SweepVariable variable, double value) {
  Experiment out = e;
  auto plasma = [&]() -> PlasmaScenario& {
    if (!out.scenario || !std::holds_alternative<PlasmaScenario>(*out.scenario)) {
      throw ScenarioError("sweep variable " + std::string(toString(variable)) + " needs a plasma scenario");
    }
    return std::get<PlasmaScenario>(*out.scenario);
  };
  switch (variable) {
    case SweepVariable::Omega:
      out.drive.Omega = value;
      break;
    case SweepVariable::Delta:
      out.drive.Omega.reset();
      out.drive.Delta = value;
      break;
    case SweepVariable::meanDeltaOmega:
      if (!out.isSynthetic()) throw ScenarioError("meanDeltaOmega can only be swept for the synthetic drive");
      out.synthetic.meanDeltaOmega = value;
      break;
    case SweepVariable::slabPosition:
      plasma().slabPosition = value;
      break;
    case SweepVariable::slabThickness:
      plasma().slabThickness = value;
      break;
    case SweepVariable::mp2Max: {
      PlasmaScenario& p = plasma();
      ProfileSpec spec = p.mp2.spec();
      spec.peak = value - spec.base;
      p.mp2 = TimeProfile(spec, p.mp2.angularFrequency());
      break;
    }
    case SweepVariable::nPulse:
      if (value < 0.0 || value != std::round(value)) throw ScenarioError("nPulse sweep values must be whole numbers");
      out.drive.nPulse = long(value);
      break;
  }
  return out;
}

SweepResult runSweep(const Experiment& e, const SweepSpec& spec, unsigned jobs) {
  std::vector<double> values = spec.values();
  SweepResult result;
  result.points.resize(values.size());
  std::vector<std::exception_ptr> errors(values.size());
  std::atomic<std::size_t> next{0};

  auto work = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= values.size()) return;
      try {
        Experiment x = applySweepValue(e, spec.variable, values[i]);
        RunResult run = runExperiment(x);
        SweepPoint& p = result.points[i];
        p.value = values[i];
        p.Omega = run.resolved.drive.Omega;
        p.Delta = run.resolved.drive.Delta;
        p.nGammaFinal = photonNumber(run.trajectory.final());
        p.nGammaRwa = run.rwa.nGamma(run.resolved.tEnd);
        p.chi = run.rwa.chi;
        p.branch = run.rwa.branch;
        for (const auto& s : run.trajectory.states) p.nGammaMax = std::max(p.nGammaMax, photonNumber(s));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  unsigned n = std::max(1u, std::min<unsigned>(jobs, unsigned(values.size())));
  if (n == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
  }
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  auto score = [&](const SweepPoint& p) {
    switch (spec.observable) {
      case SweepObservable::chi: return p.branch == RwaBranch::hyperbolic ? p.chi : -p.chi;
      case SweepObservable::NGammaFinal:
      case SweepObservable::peakOmega: return p.nGammaFinal;
    }
    return p.nGammaFinal;
  };
  for (std::size_t i = 1; i < result.points.size(); ++i) {
    if (score(result.points[i]) > score(result.points[result.peakIndex])) result.peakIndex = i;
  }
  const SweepPoint& peak = result.points[result.peakIndex];
  result.peakValue = spec.observable == SweepObservable::peakOmega ? peak.Omega : score(peak);
  return result;
}

SweepResult detuningScan(const Experiment& e, const SweepSpec& spec, unsigned jobs) {
  if (spec.variable != SweepVariable::Omega && spec.variable != SweepVariable::Delta) {
    throw Error("detuning scans sweep Omega or Delta");
  }
  return runSweep(e, spec, jobs);
}

PulseTrainReport pulseTrain(const Experiment& e) {
  if (e.drive.nPulse <= 0) throw ScenarioError("pulse train needs drive.nPulse > 0");
  ResolvedDrive r = resolveDrive(e);
  long n = e.drive.nPulse;
  std::vector<double> outputs(std::size_t(n) + 1);
  for (long k = 0; k <= n; ++k) outputs[std::size_t(k)] = double(k) * r.drive.T;
  outputs.back() = r.tEnd;
  Trajectory traj = integrateResolved(e, r, outputs);

  PulseTrainReport rep;
  rep.drive = r.drive;
  rep.rwa = rwaSolve(r.drive, r.tEnd);
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    rep.pulse.push_back(long(k));
    rep.nGamma.push_back(photonNumber(traj.states[k]));
    rep.nGammaRwa.push_back(rep.rwa.nGamma(traj.states[k].t));
  }
  rep.finalSqueeze = squeezeOf(traj.final()).r;
  rep.chiNT = rep.rwa.chi * double(n) * r.drive.T;
  return rep;
}

long pulsesForTarget(double coupling, double chi2, double period, double target) {
  if (!(period > 0.0)) throw Error("pulsesForTarget needs a positive period");
  if (!(target > 0.0)) return 0;
  if (!(coupling > 0.0)) return -1;
  auto nAt = [&](double t) {
    if (chi2 > 0.0) return rwaHyperbolic(coupling, chi2, t);
    if (chi2 < 0.0) return rwaOscillatory(coupling, chi2, t);
    return rwaCritical(coupling, t);
  };
  double tStar;
  double root = std::sqrt(target);
  if (chi2 > 0.0) {
    double chi = std::sqrt(chi2);
    tStar = std::asinh(root * chi / coupling) / chi;
  } else if (chi2 < 0.0) {
    double chi = std::sqrt(-chi2);
    double s = root * chi / coupling;
    if (s > 1.0) return -1;
    tStar = std::asin(s) / chi;
  } else {
    tStar = root / coupling;
  }
  double pulses = std::ceil(tStar / period);
  if (pulses > double(std::numeric_limits<long>::max() / 2)) return -1;
  long n = std::max(1L, long(pulses));
  // The closed-form inversion can land one pulse off through rounding.
  while (n > 1 && nAt(double(n - 1) * period) >= target) --n;
  for (int i = 0; i < 4 && nAt(double(n) * period) < target; ++i) ++n;
  return nAt(double(n) * period) >= target ? n : -1;
}

ExperimentEstimate estimate(const Experiment& e) {
  if (!e.scenario || !std::holds_alternative<PlasmaScenario>(*e.scenario)) {
    throw ScenarioError("the estimate needs a plasma scenario");
  }
  Experiment x = e;
  x.method = CouplingMethod::closedForm;
  x.multimode = false;
  x.drive.Omega.reset();
  x.drive.Delta = 0.0;
  x.drive.nPulse = 1;
  ResolvedDrive r = resolveDrive(x);

  ExperimentEstimate out;
  out.omega0 = r.drive.omega0;
  out.Omega = r.drive.Omega;
  out.meanDeltaOmegaOverOmega0 = r.drive.meanDeltaOmega / r.drive.omega0;
  out.targetPhotons = e.targetPhotons;

  const auto& plasma = std::get<PlasmaScenario>(*r.scenario);
  const Mode& mode = r.modes.at(e.mode);
  constexpr std::size_t kSamples = 4096;
  std::vector<double> ts;
  for (std::size_t i = 0; i <= kSamples; ++i) ts.push_back(r.drive.T * double(i) / double(kSamples));
  for (double b : scenarioBreakpoints(plasma, 0.0, r.drive.T)) ts.push_back(b);
  double dmMax = 0.0;
  for (double t : ts) dmMax = std::max(dmMax, plasmaDisplacements(plasma, mode, t).deltaM);
  out.enhancement = dmMax / plasma.slabThickness;

  RwaSolution rwa = rwaSolve(r.drive, r.tEnd);
  if (!(rwa.coupling > 0.0)) {
    out.reason = "the drive has no Fourier component at Omega; chi vanishes";
    return out;
  }
  out.defined = true;
  out.chiOverOmega0 = rwa.chi / r.drive.omega0;
  out.qMin = r.drive.omega0 / rwa.chi;
  out.nPulseRequired = pulsesForTarget(rwa.coupling, rwa.chi2, r.drive.T, e.targetPhotons);
  return out;
}

FormulationComparison compareFormulations(const Experiment& e) {
  ResolvedDrive r = resolveDrive(e);
  EvolutionOptions opts = evolutionOptions(e, r.drive);
  std::vector<double> outputs = outputGrid(r.tEnd, opts);
  opts.outputTimes = outputs;

  CouplingSet standard = formulationCouplings(e, r, Formulation::standard);
  CouplingSet instant = formulationCouplings(e, r, Formulation::instantaneous);
  Trajectory a = integrateMaster(standard, 0, r.tEnd, opts);
  Trajectory b = integrateMaster(instant, 0, r.tEnd, opts);

  FormulationComparison out;
  out.drive = r.drive;
  out.chi = rwaSolve(r.drive, r.tEnd).chi;
  out.times = a.times();
  out.nStandard = a.photonNumbers();
  out.nInstantaneous = b.photonNumbers();
  AveragedSeries avgA = periodAverage(out.times, out.nStandard, r.drive.T);
  AveragedSeries avgB = periodAverage(out.times, out.nInstantaneous, r.drive.T);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::size_t n = out.times.size();
  out.avgStandard.assign(n, nan);
  out.avgInstantaneous.assign(n, nan);
  out.relDeviation.assign(n, nan);
  std::size_t j = 0;
  for (std::size_t i = 0; i < n && j < avgA.times.size(); ++i) {
    if (out.times[i] != avgA.times[j]) continue;
    double sa = avgA.values[j];
    double sb = avgB.values[j];
    ++j;
    out.avgStandard[i] = sa;
    out.avgInstantaneous[i] = sb;
    double dev = sa > 0.0 ? std::abs(sb - sa) / sa : (sb == 0.0 ? 0.0 : nan);
    out.relDeviation[i] = dev;
    if (out.chi * out.times[i] >= 0.5 && std::isfinite(dev)) out.maxDeviation = std::max(out.maxDeviation, dev);
  }
  return out;
}

}  // namespace dce
