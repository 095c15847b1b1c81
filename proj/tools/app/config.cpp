#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>
#include <toml.hpp>

#include "dce/error.hpp"

namespace dce::app {

ConfigError::ConfigError(std::string message, std::string path, std::size_t line, std::size_t column)
    : std::runtime_error([&] {
        std::ostringstream s;
        if (!path.empty()) s << path << ": ";
        s << message;
        if (line > 0) s << " (line " << line << ", column " << column << ")";
        return s.str();
      }()),
      message_(std::move(message)),
      path_(std::move(path)),
      line_(line),
      column_(column) {}

namespace {

std::string join(const std::string& prefix, std::string_view key) {
  return prefix.empty() ? std::string(key) : prefix + "." + std::string(key);
}

[[noreturn]] void fail(const std::string& message, const std::string& path, const toml::node* node) {
  if (node) {
    const auto& src = node->source();
    throw ConfigError(message, path, src.begin.line, src.begin.column);
  }
  throw ConfigError(message, path);
}

// One TOML table with key bookkeeping: every key must be consumed.
class Section {
 public:
  Section(const toml::table* table, std::string path) : table_(table), path_(std::move(path)) {}

  bool present() const { return table_ != nullptr; }
  const std::string& path() const { return path_; }
  const toml::table* table() const { return table_; }

  const toml::node* node(std::string_view key) {
    if (!table_) return nullptr;
    used_.insert(std::string(key));
    return table_->get(key);
  }

  bool has(std::string_view key) const { return table_ && table_->contains(key); }

  std::optional<double> number(std::string_view key) {
    const toml::node* n = node(key);
    if (!n) return std::nullopt;
    if (auto v = n->value_exact<double>()) return *v;
    if (auto v = n->value_exact<int64_t>()) return double(*v);
    fail("expected a number", join(path_, key), n);
  }

  double number(std::string_view key, double def) { return number(key).value_or(def); }

  double positive(std::string_view key, double def) {
    double v = number(key, def);
    if (!(v > 0.0) || !std::isfinite(v)) fail("must be positive and finite", join(path_, key), node(key));
    return v;
  }

  double nonNegative(std::string_view key, double def) {
    double v = number(key, def);
    if (!(v >= 0.0) || !std::isfinite(v)) fail("must be non-negative and finite", join(path_, key), node(key));
    return v;
  }

  std::optional<int64_t> integer(std::string_view key) {
    const toml::node* n = node(key);
    if (!n) return std::nullopt;
    if (auto v = n->value_exact<int64_t>()) return *v;
    fail("expected an integer", join(path_, key), n);
  }

  int64_t integer(std::string_view key, int64_t def) { return integer(key).value_or(def); }

  bool boolean(std::string_view key, bool def) {
    const toml::node* n = node(key);
    if (!n) return def;
    if (auto v = n->value_exact<bool>()) return *v;
    fail("expected true or false", join(path_, key), n);
  }

  std::string string(std::string_view key, std::string def) {
    const toml::node* n = node(key);
    if (!n) return def;
    if (auto v = n->value_exact<std::string>()) return *v;
    fail("expected a string", join(path_, key), n);
  }

  Section sub(std::string_view key) {
    const toml::node* n = node(key);
    if (!n) return Section(nullptr, join(path_, key));
    if (!n->is_table()) fail("expected a table", join(path_, key), n);
    return Section(n->as_table(), join(path_, key));
  }

  std::vector<double> numbers(std::string_view key) {
    const toml::node* n = node(key);
    if (!n) return {};
    const toml::array* arr = n->as_array();
    if (!arr) fail("expected an array of numbers", join(path_, key), n);
    std::vector<double> out;
    for (const auto& item : *arr) {
      if (auto v = item.value_exact<double>()) {
        out.push_back(*v);
      } else if (auto iv = item.value_exact<int64_t>()) {
        out.push_back(double(*iv));
      } else {
        fail("expected an array of numbers", join(path_, key), &item);
      }
    }
    return out;
  }

  void finish() const {
    if (!table_) return;
    for (const auto& [k, v] : *table_) {
      std::string key(k.str());
      if (!used_.count(key)) {
        const auto& src = k.source();
        if (src.begin.line > 0) throw ConfigError("unknown key", join(path_, key), src.begin.line, src.begin.column);
        fail("unknown key", join(path_, key), &v);
      }
    }
  }

 private:
  const toml::table* table_;
  std::string path_;
  std::set<std::string> used_;
};

// Wraps library validation errors with the field path of the offending section.
template <class F>
auto withPath(const std::string& path, const toml::node* node, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const dce::Error& e) {
    fail(e.what(), path, node);
  }
}

bool looksComplex(const toml::node* n) {
  if (n->is_array() || n->is_string()) return true;
  if (const toml::table* t = n->as_table()) {
    return t->contains("re") || t->contains("im") || t->contains("real") || t->contains("imag");
  }
  return false;
}

TimeProfile parseProfile(Section& parent, std::string_view key, double def, bool allowComplexCheck = false) {
  const toml::node* n = parent.node(key);
  std::string path = join(parent.path(), key);
  if (!n) return TimeProfile(constantProfile(def));
  if (allowComplexCheck && looksComplex(n)) {
    fail("complex permittivity is not supported; give a real number or a real profile", path, n);
  }
  if (auto v = n->value_exact<double>()) return TimeProfile(constantProfile(*v));
  if (auto v = n->value_exact<int64_t>()) return TimeProfile(constantProfile(double(*v)));
  if (!n->is_table()) fail("expected a number or a profile table", path, n);

  Section s(n->as_table(), path);
  std::string kind = s.string("kind", "constant");
  ProfileSpec spec;
  if (kind == "rectangular_train") {
    double base = s.number("base", 0.0);
    double peak = s.number("peak", 0.0);
    spec = rectangularTrainProfile(base, peak);
  } else {
    spec.kind = withPath(join(path, "kind"), s.node("kind"), [&] { return profileKindFromString(kind); });
    if (spec.kind == ProfileKind::constant) {
      spec.base = s.number("value", s.number("base", 0.0));
    } else {
      spec.base = s.number("base", 0.0);
      spec.peak = s.number("peak", 0.0);
    }
    if (spec.kind == ProfileKind::raisedCosineTrain) spec.duty = s.number("duty", 1.0);
    if (spec.kind == ProfileKind::table) {
      spec.times = s.numbers("times");
      spec.values = s.numbers("values");
      spec.periodic = s.boolean("periodic", true);
    }
  }
  spec.omega = s.nonNegative("omega", 0.0);
  s.finish();
  return withPath(path, n, [&] { return TimeProfile(spec); });
}

Scenario parsePlasma(Section& s, double kPerp) {
  PlasmaScenario p;
  p.length = s.positive("length", 1.0);
  p.slabPosition = s.number("slabPosition", 0.5 * p.length);
  p.slabThickness = s.number("slabThickness", 1.0e-3 * p.length);
  p.eps0 = s.positive("eps0", 1.0);
  p.kPerp = kPerp;
  p.eps1 = parseProfile(s, "eps1", p.eps0, true);
  bool density = s.has("electronDensity");
  if (density && s.has("mp2")) {
    fail("give either mp2 or electronDensity, not both", join(s.path(), "electronDensity"), s.node("electronDensity"));
  }
  if (density) {
    TimeProfile ne = parseProfile(s, "electronDensity", 0.0);
    double charge = s.positive("charge", 1.0);
    double mass = s.positive("effectiveMass", 1.0);
    p.mp2 = TimeProfile(mp2FromElectronDensity(ne.spec(), charge, mass));
  } else {
    p.mp2 = parseProfile(s, "mp2", 0.0);
  }
  if (!(p.slabPosition >= 0.0 && p.slabPosition <= p.length)) {
    fail("slab position must lie in [0, L]", join(s.path(), "slabPosition"), s.node("slabPosition"));
  }
  if (!(p.slabThickness > 0.0) || p.slabPosition + p.slabThickness > p.length * (1.0 + 1e-15)) {
    fail("slab thickness must be positive with l + delta <= L", join(s.path(), "slabThickness"),
         s.node("slabThickness"));
  }
  const toml::node* where = s.node("slabThickness");
  withPath(s.path(), where, [&] { p.validate(); return 0; });
  return p;
}

Scenario parseWall(Section& s, double kPerp) {
  WallScenario w;
  w.length = s.positive("length", 1.0);
  w.m2 = s.positive("m2", 1.0e6);
  w.eps0 = s.positive("eps0", 1.0);
  if (const toml::node* n = s.node("eps1"); n && looksComplex(n)) {
    fail("complex permittivity is not supported; give a real number", join(s.path(), "eps1"), n);
  }
  w.eps1 = s.positive("eps1", w.eps0);
  w.kPerp = kPerp;
  w.delta1 = s.nonNegative("delta1", 0.0);
  w.displacement = parseProfile(s, "displacement", 0.0);
  if (!(w.delta1 < w.length)) fail("delta1 must be smaller than L", join(s.path(), "delta1"), s.node("delta1"));
  withPath(s.path(), s.node("displacement"), [&] { w.validate(); return 0; });
  return w;
}

std::size_t toSize(Section& s, std::string_view key, int64_t def, int64_t min) {
  int64_t v = s.integer(key, def);
  if (v < min) fail("must be at least " + std::to_string(min), join(s.path(), key), s.node(key));
  return std::size_t(v);
}

RunConfig parseTable(const toml::table& root) {
  RunConfig cfg;
  Experiment& e = cfg.experiment;
  Section top(&root, "");

  Section modes = top.sub("modes");
  e.nModes = toSize(modes, "count", 1, 1);
  std::size_t driven = toSize(modes, "driven", 1, 1);
  if (driven > e.nModes) fail("driven mode must be <= modes.count", "modes.driven", modes.node("driven"));
  e.mode = driven - 1;
  double kPerp = modes.nonNegative("kPerp", 0.0);
  cfg.profilePoints = toSize(modes, "profilePoints", 201, 2);
  e.numerics.modeSolver.scanStep = modes.nonNegative("scanStep", 0.0);
  e.numerics.modeSolver.rootRelTol = modes.positive("rootTol", 1e-12);
  modes.finish();

  Section scen = top.sub("scenario");
  if (!scen.present()) throw ConfigError("missing [scenario] section", "scenario");
  int kinds = int(scen.has("wall")) + int(scen.has("plasma")) + int(scen.has("synthetic"));
  if (kinds != 1) {
    fail("exactly one of scenario.wall, scenario.plasma, scenario.synthetic is required", "scenario",
         scen.table());
  }
  if (scen.has("plasma")) {
    Section s = scen.sub("plasma");
    cfg.scenarioKind = "plasma";
    e.scenario = parsePlasma(s, kPerp);
    s.finish();
  } else if (scen.has("wall")) {
    Section s = scen.sub("wall");
    cfg.scenarioKind = "wall";
    e.scenario = parseWall(s, kPerp);
    s.finish();
  } else {
    Section s = scen.sub("synthetic");
    cfg.scenarioKind = "synthetic";
    e.synthetic.omega0 = s.positive("omega0", 1.0);
    e.synthetic.meanDeltaOmega = s.number("meanDeltaOmega", 0.01);
    s.finish();
    if (e.nModes != 1) fail("the synthetic drive has one mode", "modes.count", modes.node("count"));
    if (kPerp != 0.0) fail("the synthetic drive has no transverse momentum", "modes.kPerp", nullptr);
  }
  scen.finish();

  Section drive = top.sub("drive");
  if (auto v = drive.number("Omega")) {
    if (!(*v > 0.0)) fail("must be positive", "drive.Omega", drive.node("Omega"));
    e.drive.Omega = *v;
  }
  e.drive.Delta = drive.number("Delta", 0.0);
  int64_t n = drive.integer("nPulse", 0);
  if (n < 0) fail("must be non-negative", "drive.nPulse", drive.node("nPulse"));
  e.drive.nPulse = long(n);
  e.drive.tEnd = drive.nonNegative("tEnd", 0.0);
  if (e.drive.Omega && drive.has("Delta")) {
    fail("give either Omega or Delta, not both", "drive.Delta", drive.node("Delta"));
  }
  drive.finish();

  Section coup = top.sub("couplings");
  e.method = withPath("couplings.method", coup.node("method"),
                      [&] { return couplingMethodFromString(coup.string("method", "quadrature")); });
  e.formulation = withPath("couplings.formulation", coup.node("formulation"),
                           [&] { return formulationFromString(coup.string("formulation", "standard")); });
  e.multimode = coup.boolean("multimode", false);
  coup.finish();

  Section num = top.sub("numerics");
  e.numerics.ode.relTol = num.positive("tolOde", 1e-10);
  e.numerics.ode.absTol = num.nonNegative("tolOdeAbs", 0.0);
  e.numerics.ode.maxStep = num.nonNegative("maxStep", 0.0);
  e.numerics.ode.maxSteps = toSize(num, "maxSteps", 50'000'000, 1);
  e.numerics.quadrature.relTol = num.positive("tolQuad", 1e-10);
  e.numerics.quadrature.maxDepth = unsigned(toSize(num, "quadMaxDepth", 18, 1));
  e.numerics.modeSolver.quadrature = e.numerics.quadrature;
  e.numerics.gridPerPeriod = toSize(num, "gridPerPeriod", 64, 4);
  e.numerics.samplesPerPeriod = toSize(num, "samplesPerPeriod", 16, 2);
  e.numerics.driftFactor = num.positive("driftFactor", 10.0);
  e.numerics.symplecticProjection = num.boolean("symplecticProjection", false);
  num.finish();

  Section est = top.sub("estimate");
  e.targetPhotons = est.positive("targetPhotons", 10.0);
  est.finish();

  Section sw = top.sub("sweep");
  if (sw.present()) {
    SweepSpec spec;
    spec.variable = withPath("sweep.variable", sw.node("variable"),
                             [&] { return sweepVariableFromString(sw.string("variable", "Omega")); });
    spec.observable = withPath("sweep.observable", sw.node("observable"),
                               [&] { return sweepObservableFromString(sw.string("observable", "NGammaFinal")); });
    auto lo = sw.number("lo");
    auto hi = sw.number("hi");
    if (!lo || !hi) fail("sweep needs lo and hi", "sweep", sw.table());
    spec.lo = *lo;
    spec.hi = *hi;
    spec.nPoints = toSize(sw, "points", 41, 2);
    if (!(spec.hi > spec.lo)) fail("must exceed sweep.lo", "sweep.hi", sw.node("hi"));
    sw.finish();
    cfg.sweep = spec;
  }

  Section out = top.sub("output");
  cfg.output.directory = out.string("directory", "out");
  int64_t prec = out.integer("precision", 0);
  if (prec < 0 || prec > 17) fail("must lie in [0, 17]", "output.precision", out.node("precision"));
  cfg.output.precision = int(prec);
  out.finish();

  top.finish();
  return cfg;
}

// Shortest round-trip form, always a TOML float.
std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, r.ptr);
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string fmtList(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + "]";
}

std::string fmtProfile(const TimeProfile& p) {
  const ProfileSpec& s = p.spec();
  if (s.kind == ProfileKind::constant && s.omega == 0.0) return fmt(s.base);
  std::string out = "{ kind = " + quoted(toString(s.kind)) + ", base = " + fmt(s.base);
  if (s.kind != ProfileKind::constant) out += ", peak = " + fmt(s.peak);
  if (s.kind == ProfileKind::raisedCosineTrain) out += ", duty = " + fmt(s.duty);
  if (s.kind == ProfileKind::table) {
    out += ", times = " + fmtList(s.times) + ", values = " + fmtList(s.values);
    out += std::string(", periodic = ") + (s.periodic ? "true" : "false");
  }
  if (s.omega != 0.0) out += ", omega = " + fmt(s.omega);
  return out + " }";
}

}  // namespace

RunConfig parseConfigString(std::string_view text, std::string_view source) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("invalid manifest JSON: ") + e.what());
    }
    if (!j.contains("config_toml") || !j["config_toml"].is_string()) {
      throw ConfigError("manifest has no config_toml string", "config_toml");
    }
    return parseConfigString(j["config_toml"].get<std::string>(), source);
  }
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    const auto& src = e.source();
    throw ConfigError(std::string(e.description()), {}, src.begin.line, src.begin.column);
  }
  return parseTable(root);
}

RunConfig parseConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseConfigString(buf.str(), path.string());
}

void validateConfig(const RunConfig& cfg) {
  const Numerics& n = cfg.experiment.numerics;
  if (!(n.ode.relTol > 0.0)) throw ConfigError("must be positive", "numerics.tolOde");
  if (!(n.quadrature.relTol > 0.0)) throw ConfigError("must be positive", "numerics.tolQuad");
}

std::string toToml(const RunConfig& cfg) {
  const Experiment& e = cfg.experiment;
  std::ostringstream o;
  o << "[scenario." << cfg.scenarioKind << "]\n";
  if (cfg.scenarioKind == "synthetic") {
    o << "omega0 = " << fmt(e.synthetic.omega0) << "\n";
    o << "meanDeltaOmega = " << fmt(e.synthetic.meanDeltaOmega) << "\n";
  } else if (const auto* p = std::get_if<PlasmaScenario>(&*e.scenario)) {
    o << "length = " << fmt(p->length) << "\n";
    o << "slabPosition = " << fmt(p->slabPosition) << "\n";
    o << "slabThickness = " << fmt(p->slabThickness) << "\n";
    o << "eps0 = " << fmt(p->eps0) << "\n";
    o << "eps1 = " << fmtProfile(p->eps1) << "\n";
    o << "mp2 = " << fmtProfile(p->mp2) << "\n";
  } else {
    const auto& w = std::get<WallScenario>(*e.scenario);
    o << "length = " << fmt(w.length) << "\n";
    o << "m2 = " << fmt(w.m2) << "\n";
    o << "eps0 = " << fmt(w.eps0) << "\n";
    o << "eps1 = " << fmt(w.eps1) << "\n";
    o << "delta1 = " << fmt(w.delta1) << "\n";
    o << "displacement = " << fmtProfile(w.displacement) << "\n";
  }
  double kPerp = e.scenario ? transverseMomentum(*e.scenario) : 0.0;
  o << "\n[modes]\ncount = " << e.nModes << "\ndriven = " << e.mode + 1 << "\nkPerp = " << fmt(kPerp)
    << "\nprofilePoints = " << cfg.profilePoints << "\nscanStep = " << fmt(e.numerics.modeSolver.scanStep)
    << "\nrootTol = " << fmt(e.numerics.modeSolver.rootRelTol) << "\n";
  o << "\n[drive]\n";
  if (e.drive.Omega) {
    o << "Omega = " << fmt(*e.drive.Omega) << "\n";
  } else {
    o << "Delta = " << fmt(e.drive.Delta) << "\n";
  }
  o << "nPulse = " << e.drive.nPulse << "\ntEnd = " << fmt(e.drive.tEnd) << "\n";
  o << "\n[couplings]\nmethod = " << quoted(toString(e.method)) << "\nformulation = "
    << quoted(toString(e.formulation)) << "\nmultimode = " << (e.multimode ? "true" : "false") << "\n";
  const Numerics& n = e.numerics;
  o << "\n[numerics]\ntolOde = " << fmt(n.ode.relTol) << "\ntolOdeAbs = " << fmt(n.ode.absTol)
    << "\nmaxStep = " << fmt(n.ode.maxStep) << "\nmaxSteps = " << n.ode.maxSteps
    << "\ntolQuad = " << fmt(n.quadrature.relTol) << "\nquadMaxDepth = " << n.quadrature.maxDepth
    << "\ngridPerPeriod = " << n.gridPerPeriod << "\nsamplesPerPeriod = " << n.samplesPerPeriod
    << "\ndriftFactor = " << fmt(n.driftFactor)
    << "\nsymplecticProjection = " << (n.symplecticProjection ? "true" : "false") << "\n";
  o << "\n[estimate]\ntargetPhotons = " << fmt(e.targetPhotons) << "\n";
  if (cfg.sweep) {
    const SweepSpec& s = *cfg.sweep;
    o << "\n[sweep]\nvariable = " << quoted(toString(s.variable)) << "\nlo = " << fmt(s.lo)
      << "\nhi = " << fmt(s.hi) << "\npoints = " << s.nPoints << "\nobservable = "
      << quoted(toString(s.observable)) << "\n";
  }
  o << "\n[output]\ndirectory = " << quoted(cfg.output.directory) << "\nprecision = " << cfg.output.precision
    << "\n";
  return o.str();
}

}  // namespace dce::app
