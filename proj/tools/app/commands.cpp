#include "commands.hpp"

#include <boost/version.hpp>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "csv.hpp"
#include "dce/error.hpp"
#include "dce/material.hpp"

namespace dce::app {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Output {
  const CommandContext& ctx;
  CommandResult result;
  json summary = json::object();
  std::vector<std::string> warnings;

  int precision() const { return ctx.config.output.precision; }

  void write(const CsvTable& table, const std::string& name) {
    fs::path p = ctx.outDir / name;
    table.write(p);
    result.files.push_back(p);
  }

  void note(const std::string& line) { result.summary.push_back(line); }
};

std::string num(double v) { return formatNumber(v, 0); }

const Scenario& requireScenario(const RunConfig& cfg, std::string_view command) {
  if (!cfg.experiment.scenario) {
    throw ScenarioError(std::string(command) + " needs a wall or plasma scenario");
  }
  return *cfg.experiment.scenario;
}

void runModes(Output& out) {
  const RunConfig& cfg = out.ctx.config;
  const Scenario& s = requireScenario(cfg, "modes");
  validate(s);
  const Experiment& e = cfg.experiment;
  std::vector<Mode> modes = solveModes(s, e.nModes, e.numerics.modeSolver);

  CsvTable t(headers::modes, out.precision());
  double worst = 0.0;
  for (const Mode& m : modes) {
    t.add(long(m.index)).add(m.k).add(m.omega0).add(m.xi).add(m.kPrime.real()).add(m.kPrime.imag());
    t.add(m.amps.A).add(m.amps.B.real()).add(m.amps.B.imag()).add(m.amps.C.real()).add(m.amps.C.imag());
    t.add(m.amps.D).add(m.normResidual);
    t.endRow();
  }
  for (const auto& row : orthonormalityCheck(modes, s, e.numerics.quadrature)) {
    for (double v : row) worst = std::max(worst, v);
  }
  out.write(t, "modes.csv");

  double L = cavityLength(s);
  double lo = 0.0;
  double hi = L;
  if (std::holds_alternative<WallScenario>(s)) {
    // Three decay lengths of the fundamental into each barrier.
    const Mode& m = modes.front();
    if (m.leftTail) lo = -3.0 / m.leftTail->kappa;
    if (m.rightTail) hi = L + 3.0 / m.rightTail->kappa;
  }
  CsvTable p(headers::modeProfile(modes.size()), out.precision());
  std::size_t n = cfg.profilePoints;
  for (std::size_t i = 0; i < n; ++i) {
    double x = i + 1 == n ? hi : lo + (hi - lo) * double(i) / double(n - 1);
    p.add(x);
    for (const Mode& m : modes) p.add(evalMode(m, s, x));
    p.endRow();
  }
  out.write(p, "mode_profiles.csv");

  out.summary["orthonormality_max_residual"] = worst;
  out.summary["omega0"] = json::array();
  for (const Mode& m : modes) out.summary["omega0"].push_back(m.omega0);
  out.note("modes: " + std::to_string(modes.size()) + " solved, omega0_1 = " + num(modes.front().omega0) +
           ", max orthonormality residual " + num(worst));
}

void describeDrive(Output& out, const ResolvedDrive& r) {
  const DriveSpec& d = r.drive;
  out.summary["omega0"] = d.omega0;
  out.summary["Omega"] = d.Omega;
  out.summary["Delta"] = d.Delta;
  out.summary["meanDeltaOmega"] = d.meanDeltaOmega;
  out.summary["gOmega"] = {d.gOmega.real(), d.gOmega.imag()};
  out.summary["T"] = d.T;
  out.summary["tEnd"] = r.tEnd;
  for (const auto& w : r.couplings.warnings) out.warnings.push_back(w);
}

void runCouplings(Output& out) {
  const RunConfig& cfg = out.ctx.config;
  ResolvedDrive r = resolveDrive(cfg.experiment);
  describeDrive(out, r);
  EvolutionOptions opts = evolutionOptions(cfg.experiment, r.drive);
  std::vector<double> times = outputGrid(r.tEnd, opts);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t n = r.couplings.size();
  if (cfg.experiment.multimode) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) pairs.emplace_back(a, b);
  } else {
    pairs.emplace_back(r.modeIndex, r.modeIndex);
  }
  // Labels follow the configured (one-based) mode numbering.
  std::size_t label0 = r.couplings.size() == 1 ? cfg.experiment.mode : 0;
  std::string prov(toString(r.couplings.provenance()));
  CsvTable t(headers::couplings, out.precision());
  CouplingSample s;
  for (double time : times) {
    r.couplings.sample(time, s);
    for (auto [a, b] : pairs) {
      std::complex<double> g = s.g[a * s.n + b];
      t.add(time).add(long(label0 + a + 1)).add(long(label0 + b + 1)).add(s.mu[a * s.n + b]);
      t.add(g.real()).add(g.imag()).add(prov);
      t.endRow();
    }
  }
  out.write(t, "couplings.csv");
  out.summary["provenance"] = prov;
  out.note("couplings: " + prov + ", " + std::to_string(times.size()) + " samples, <dw> = " +
           num(r.drive.meanDeltaOmega) + ", |<g>_Omega| = " + num(std::abs(r.drive.gOmega)));
}

void runEvolve(Output& out) {
  const RunConfig& cfg = out.ctx.config;
  if (cfg.experiment.multimode) {
    MultimodeResult m = runMultimode(cfg.experiment);
    describeDrive(out, m.resolved);
    std::size_t n = m.resolved.couplings.size();
    CsvTable t(headers::multimode(n), out.precision());
    for (const auto& s : m.trajectory.states) {
      t.add(s.t);
      for (double v : s.photonNumbers()) t.add(v);
      t.add(s.symplecticResidual());
      t.endRow();
    }
    out.write(t, "evolve_multimode.csv");
    std::vector<double> fin = m.trajectory.final().photonNumbers();
    out.summary["final_photon_numbers"] = fin;
    out.summary["max_residual"] = m.trajectory.maxResidual;
    std::string line = "evolve (multimode): N =";
    for (double v : fin) line += " " + num(v);
    out.note(line);
    return;
  }

  RunResult run = runExperiment(cfg.experiment);
  describeDrive(out, run.resolved);
  CsvTable t(headers::evolve, out.precision());
  for (const auto& s : run.trajectory.states) {
    t.add(s.t).add(s.A.real()).add(s.A.imag()).add(s.B.real()).add(s.B.imag()).add(photonNumber(s));
    t.add(squeezeOf(s).r).add(s.K).add(invariantResidual(s));
    t.endRow();
  }
  out.write(t, "evolve.csv");
  double nFinal = photonNumber(run.trajectory.final());
  out.summary["Ngamma_final"] = nFinal;
  out.summary["Ngamma_rwa_final"] = run.rwa.nGamma(run.resolved.tEnd);
  out.summary["chi"] = run.rwa.chi;
  out.summary["branch"] = std::string(toString(run.rwa.branch));
  out.summary["max_residual"] = run.trajectory.maxResidual;
  out.summary["steps"] = run.trajectory.stats.steps;

  if (cfg.experiment.drive.nPulse > 0) {
    PulseTrainReport rep = pulseTrain(cfg.experiment);
    CsvTable p(headers::pulseTrain, out.precision());
    for (std::size_t i = 0; i < rep.pulse.size(); ++i) {
      p.add(rep.pulse[i]).add(double(rep.pulse[i]) * rep.drive.T).add(rep.nGamma[i]).add(rep.nGammaRwa[i]);
      p.endRow();
    }
    out.write(p, "pulse_train.csv");
    out.summary["final_squeeze"] = rep.finalSqueeze;
    out.summary["chiNT"] = rep.chiNT;
  }
  out.note("evolve: N_gamma(tEnd) = " + num(nFinal) + " (RWA " + num(run.rwa.nGamma(run.resolved.tEnd)) +
           "), max invariant residual " + num(run.trajectory.maxResidual));
}

void runRwa(Output& out) {
  const RunConfig& cfg = out.ctx.config;
  ResolvedDrive r = resolveDrive(cfg.experiment);
  describeDrive(out, r);
  RwaSolution rwa = rwaSolve(r.drive, r.tEnd);
  std::vector<double> times = outputGrid(r.tEnd, evolutionOptions(cfg.experiment, r.drive));
  std::string branch(toString(rwa.branch));
  CsvTable t(headers::rwa, out.precision());
  for (double time : times) {
    t.add(time).add(rwa.nGamma(time)).add(rwa.chi).add(branch);
    t.endRow();
  }
  out.write(t, "rwa.csv");
  out.summary["chi"] = rwa.chi;
  out.summary["chi2"] = rwa.chi2;
  out.summary["branch"] = branch;
  out.note("rwa: chi = " + num(rwa.chi) + " (" + branch + "), N_gamma(tEnd) = " + num(rwa.nGamma(r.tEnd)));
}

void runSweepCommand(Output& out) {
  const RunConfig& cfg = out.ctx.config;
  if (!cfg.sweep) throw ConfigError("the sweep command needs a [sweep] section", "sweep");
  SweepResult res = runSweep(cfg.experiment, *cfg.sweep, out.ctx.jobs);
  CsvTable t(headers::sweep, out.precision());
  for (const SweepPoint& p : res.points) {
    t.add(p.value).add(p.Omega).add(p.Delta).add(p.nGammaFinal).add(p.nGammaRwa).add(p.chi);
    t.add(toString(p.branch));
    t.endRow();
  }
  out.write(t, "sweep.csv");
  const SweepPoint& peak = res.points[res.peakIndex];
  out.summary["variable"] = std::string(toString(cfg.sweep->variable));
  out.summary["observable"] = std::string(toString(cfg.sweep->observable));
  out.summary["peak_index"] = res.peakIndex;
  out.summary["peak_value"] = res.peakValue;
  out.summary["peak_at"] = peak.value;
  out.note("sweep: " + std::to_string(res.points.size()) + " points, peak at " +
           std::string(toString(cfg.sweep->variable)) + " = " + num(peak.value) + " (" +
           std::string(toString(cfg.sweep->observable)) + " = " + num(res.peakValue) + ")");
}

void runCompare(Output& out) {
  const RunConfig& cfg = out.ctx.config;
  FormulationComparison c = compareFormulations(cfg.experiment);
  CsvTable t(headers::compare, out.precision());
  for (std::size_t i = 0; i < c.times.size(); ++i) {
    t.add(c.times[i]).add(c.nStandard[i]).add(c.nInstantaneous[i]).add(c.avgStandard[i]);
    t.add(c.avgInstantaneous[i]).add(c.relDeviation[i]);
    t.endRow();
  }
  out.write(t, "compare.csv");
  out.summary["max_deviation"] = c.maxDeviation;
  out.summary["chi"] = c.chi;
  out.note("compare: max period-averaged relative deviation " + num(c.maxDeviation) + " for chi t >= 0.5");
}

void runEstimate(Output& out) {
  const RunConfig& cfg = out.ctx.config;
  ExperimentEstimate est = estimate(cfg.experiment);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CsvTable t(headers::estimate, out.precision());
  t.add(est.defined ? est.chiOverOmega0 : nan).add(est.enhancement);
  if (est.defined && est.nPulseRequired >= 0) {
    t.add(est.nPulseRequired);
  } else {
    t.add(std::string_view("nan"));
  }
  t.add(est.defined ? est.qMin : nan).add(est.omega0).add(est.Omega).add(est.meanDeltaOmegaOverOmega0);
  t.add(est.targetPhotons);
  t.endRow();
  out.write(t, "estimate.csv");
  out.summary["defined"] = est.defined;
  if (!est.defined) {
    out.summary["reason"] = est.reason;
    out.note("estimate: undefined (" + est.reason + ")");
    return;
  }
  out.summary["chiOverOmega0"] = est.chiOverOmega0;
  out.summary["nPulseRequired"] = est.nPulseRequired;
  out.note("estimate: chi/omega0 = " + num(est.chiOverOmega0) + ", enhancement = " + num(est.enhancement) +
           ", nPulse = " + std::to_string(est.nPulseRequired) + ", Q_min = " + num(est.qMin));
}

void writeManifest(Output& out) {
  const RunConfig& cfg = out.ctx.config;
  std::string toml = toToml(cfg);
  json m;
  m["tool"] = "dce";
  m["version"] = std::string(kToolVersion);
  m["command"] = out.ctx.command;
  m["config_hash"] = "fnv1a64:" + fnv1a64(toml);
  m["config_toml"] = toml;
  const Numerics& n = cfg.experiment.numerics;
  m["tolerances"] = {{"ode_rel", n.ode.relTol},
                     {"ode_abs", n.ode.absTol > 0.0 ? n.ode.absTol : n.ode.relTol * 1e-2},
                     {"quad_rel", n.quadrature.relTol},
                     {"root_rel", n.modeSolver.rootRelTol}};
  m["versions"] = {{"dce", std::string(kToolVersion)},
                   {"boost", BOOST_LIB_VERSION},
#if defined(__clang__)
                   {"compiler", "clang " __clang_version__},
#elif defined(__GNUC__)
                   {"compiler", "gcc " __VERSION__},
#else
                   {"compiler", "unknown"},
#endif
                   {"cxx", long(__cplusplus)}};
  m["jobs"] = out.ctx.jobs;
  json files = json::array();
  for (const auto& f : out.result.files) files.push_back(f.filename().string());
  m["outputs"] = files;
  m["summary"] = out.summary;
  m["warnings"] = out.warnings;

  fs::path p = out.ctx.outDir / (out.ctx.command + ".manifest.json");
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write '" + p.string() + "'");
  f << m.dump(2) << "\n";
  out.result.files.push_back(p);
}

}  // namespace

const std::vector<std::string>& commandNames() {
  static const std::vector<std::string> names{"modes", "couplings", "evolve", "rwa", "sweep", "compare", "estimate"};
  return names;
}

std::string fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CommandResult runCommand(const CommandContext& ctx) {
  using Handler = void (*)(Output&);
  static const std::map<std::string, Handler> handlers{
      {"modes", runModes},   {"couplings", runCouplings},     {"evolve", runEvolve},
      {"rwa", runRwa},       {"sweep", runSweepCommand},      {"compare", runCompare},
      {"estimate", runEstimate}};
  auto it = handlers.find(ctx.command);
  if (it == handlers.end()) throw std::invalid_argument("unknown command '" + ctx.command + "'");
  fs::create_directories(ctx.outDir);
  Output out{ctx, {}, json::object(), {}};
  it->second(out);
  writeManifest(out);
  for (const auto& w : out.warnings) out.result.summary.push_back("warning: " + w);
  return std::move(out.result);
}

}  // namespace dce::app
