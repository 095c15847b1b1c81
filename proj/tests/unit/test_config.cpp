#include <gtest/gtest.h>

#include <string>

#include "config.hpp"

using namespace dce;
using namespace dce::app;

namespace {

ConfigError errorOf(const std::string& text) {
  try {
    parseConfigString(text);
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "no ConfigError for:\n" << text;
  return ConfigError("none");
}

}  // namespace

TEST(Config, MinimalPlasmaFillsDefaults) {
  RunConfig c = parseConfigString(R"([scenario.plasma]
length = 2.0
mp2 = { kind = "sinusoidal", peak = 10.0 }
)");
  EXPECT_EQ(c.scenarioKind, "plasma");
  const auto& p = std::get<PlasmaScenario>(*c.experiment.scenario);
  EXPECT_DOUBLE_EQ(p.slabPosition, 1.0);
  EXPECT_DOUBLE_EQ(p.slabThickness, 2e-3);
  EXPECT_DOUBLE_EQ(p.eps0, 1.0);
  EXPECT_EQ(c.experiment.nModes, 1u);
  EXPECT_EQ(c.experiment.mode, 0u);
  EXPECT_EQ(c.experiment.method, CouplingMethod::quadrature);
  EXPECT_DOUBLE_EQ(c.experiment.numerics.ode.relTol, 1e-10);
  EXPECT_EQ(c.output.directory, "out");
}

TEST(Config, SyntheticDefaults) {
  RunConfig c = parseConfigString("[scenario.synthetic]\n");
  EXPECT_TRUE(c.experiment.isSynthetic());
  EXPECT_DOUBLE_EQ(c.experiment.synthetic.meanDeltaOmega, 0.01);
}

TEST(Config, ElectronDensityFormMapsToMp2) {
  RunConfig c = parseConfigString(R"([scenario.plasma]
electronDensity = { kind = "sinusoidal", peak = 8.0 }
charge = 1.0
effectiveMass = 2.0
)");
  const auto& p = std::get<PlasmaScenario>(*c.experiment.scenario);
  EXPECT_DOUBLE_EQ(p.mp2.spec().peak, 4.0);
}

TEST(Config, ExactlyOneScenario) {
  ConfigError e = errorOf("[scenario.plasma]\n[scenario.wall]\n");
  EXPECT_EQ(e.path(), "scenario");
  EXPECT_EQ(errorOf("[drive]\nDelta = 0.0\n").path(), "scenario");
}

TEST(Config, ThickSlabNamesTheField) {
  ConfigError e = errorOf("[scenario.plasma]\nlength = 1.0\nslabThickness = 1.5\n");
  EXPECT_EQ(e.path(), "scenario.plasma.slabThickness");
}

TEST(Config, UnknownKeyReportsPosition) {
  ConfigError e = errorOf("[scenario.synthetic]\nomega0 = 1.0\n\n[drive]\n  tEnd = 5.0\n  pulses = 3\n");
  EXPECT_EQ(e.path(), "drive.pulses");
  EXPECT_EQ(e.line(), 6u);
  EXPECT_EQ(e.column(), 3u);
}

TEST(Config, SyntaxErrorReportsPosition) {
  ConfigError e = errorOf("[scenario.synthetic]\nomega0 = = 1\n");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_GT(e.column(), 0u);
  EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
}

TEST(Config, ComplexPermittivityIsRejected) {
  ConfigError e = errorOf("[scenario.plasma]\neps1 = { re = 2.0, im = 0.1 }\n");
  EXPECT_EQ(e.path().rfind("scenario.plasma.eps1", 0), 0u) << e.path();
}

TEST(Config, OmegaAndDeltaAreExclusive) {
  ConfigError e = errorOf("[scenario.synthetic]\n[drive]\nOmega = 2.0\nDelta = 0.1\n");
  EXPECT_EQ(e.path(), "drive.Delta");
}

TEST(Config, DrivenModeWithinCount) {
  ConfigError e = errorOf("[scenario.plasma]\n[modes]\ncount = 2\ndriven = 3\n");
  EXPECT_EQ(e.path(), "modes.driven");
}

TEST(Config, BadEnumNamesTheField) {
  EXPECT_EQ(errorOf("[scenario.synthetic]\n[couplings]\nmethod = \"magic\"\n").path(), "couplings.method");
  EXPECT_EQ(errorOf("[scenario.synthetic]\n[sweep]\nvariable = \"x\"\nlo = 0.0\nhi = 1.0\n").path(),
            "sweep.variable");
}

TEST(Config, CanonicalTomlRoundTrips) {
  RunConfig a = parseConfigString(R"([scenario.wall]
m2 = 1e4
eps1 = 2.0
delta1 = 1e-4
displacement = { kind = "sinusoidal", peak = 5e-5 }
[modes]
count = 2
[drive]
nPulse = 7
[sweep]
variable = "Delta"
lo = -0.01
hi = 0.01
points = 5
[output]
precision = 12
)");
  std::string t = toToml(a);
  RunConfig b = parseConfigString(t);
  EXPECT_EQ(toToml(b), t);
  const auto& w = std::get<WallScenario>(*b.experiment.scenario);
  EXPECT_DOUBLE_EQ(w.m2, 1e4);
  EXPECT_DOUBLE_EQ(w.displacement.spec().peak, 5e-5);
  ASSERT_TRUE(b.sweep.has_value());
  EXPECT_EQ(b.sweep->nPoints, 5u);
  EXPECT_EQ(b.output.precision, 12);
}

TEST(Config, ManifestJsonCarriesTheConfig) {
  RunConfig a = parseConfigString("[scenario.synthetic]\nmeanDeltaOmega = 0.02\n");
  std::string toml = toToml(a);
  std::string escaped;
  for (char ch : toml) {
    if (ch == '\n') escaped += "\\n";
    else if (ch == '"') escaped += "\\\"";
    else if (ch == '\\') escaped += "\\\\";
    else escaped += ch;
  }
  RunConfig b = parseConfigString("{\"tool\": \"dce\", \"config_toml\": \"" + escaped + "\"}");
  EXPECT_DOUBLE_EQ(b.experiment.synthetic.meanDeltaOmega, 0.02);
  EXPECT_THROW(parseConfigString("{\"tool\": \"dce\"}"), ConfigError);
}

TEST(Config, ValidateRejectsNonPositiveTolerance) {
  RunConfig c = parseConfigString("[scenario.synthetic]\n");
  c.experiment.numerics.ode.relTol = 0.0;
  EXPECT_THROW(validateConfig(c), ConfigError);
}
