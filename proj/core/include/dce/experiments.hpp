#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dce/couplings.hpp"
#include "dce/evolution.hpp"
#include "dce/modes.hpp"
#include "dce/rwa.hpp"
#include "dce/scenario.hpp"

namespace dce {

/// Single mode driven by delta omega(t) = <dw>(1 - cos Omega t), g = -i delta omega / 2.
struct SyntheticSetup {
  double omega0 = 1.0;
  double meanDeltaOmega = 0.01;
};

enum class CouplingMethod { quadrature, closedForm };
enum class Formulation { standard, instantaneous };

std::string_view toString(CouplingMethod m);
CouplingMethod couplingMethodFromString(std::string_view s);
std::string_view toString(Formulation f);
Formulation formulationFromString(std::string_view s);

struct DriveSettings {
  /// Drive frequency; when unset it is fixed by Omega = 2(omega0 + <dw> + Delta).
  std::optional<double> Omega;
  double Delta = 0.0;
  /// Run length in drive periods; 0 uses tEnd.
  long nPulse = 0;
  double tEnd = 0.0;
};

struct Numerics {
  OdeOptions ode{};
  QuadratureOptions quadrature{};
  ModeSolverOptions modeSolver{};
  /// Coupling grid points per drive period (quadrature and instantaneous).
  std::size_t gridPerPeriod = 64;
  /// Trajectory output samples per drive period.
  std::size_t samplesPerPeriod = 16;
  double driftFactor = 10.0;
  bool symplecticProjection = false;
};

/// Everything needed to run one trajectory: a scenario (or the synthetic
/// drive), the mode basis, the drive and the numerics.
struct Experiment {
  std::optional<Scenario> scenario;
  SyntheticSetup synthetic{};
  std::size_t nModes = 1;
  /// Zero-based index of the driven mode.
  std::size_t mode = 0;
  DriveSettings drive{};
  CouplingMethod method = CouplingMethod::quadrature;
  Formulation formulation = Formulation::standard;
  /// Keep off-diagonal couplings and propagate all modes together.
  bool multimode = false;
  Numerics numerics{};
  /// Photon target for the pulse estimate.
  double targetPhotons = 10.0;

  bool isSynthetic() const { return !scenario.has_value(); }
};

/// Drive and coefficients of an experiment after Omega has been fixed.
struct ResolvedDrive {
  DriveSpec drive;
  CouplingSet couplings;
  std::vector<Mode> modes;
  /// Scenario with every drive-locked profile bound to Omega.
  std::optional<Scenario> scenario;
  double tEnd = 0.0;
  /// Index of the driven mode inside `couplings`.
  std::size_t modeIndex = 0;
  /// Omega fixed-point iterations used.
  int iterations = 0;
};

/// Solves the modes, fixes Omega self-consistently (Omega enters <dw> only
/// through drive-locked profiles) and builds the couplings on [0, tEnd].
ResolvedDrive resolveDrive(const Experiment& experiment);

/// Coefficients of the experiment for a given (bound) scenario on [0, tEnd].
CouplingSet buildCouplings(const Experiment& experiment, const Scenario& bound,
                           const std::vector<Mode>& modes, double period, double tEnd);

/// Times in [t0, t1] where a profile of the (bound) scenario jumps or kinks.
std::vector<double> scenarioBreakpoints(const Scenario& scenario, double t0, double t1);

/// Evolution options derived from the experiment numerics.
EvolutionOptions evolutionOptions(const Experiment& experiment, const DriveSpec& drive);

struct RunResult {
  ResolvedDrive resolved;
  Trajectory trajectory;
  RwaSolution rwa;
};

/// One trajectory of the driven mode in the configured formulation.
RunResult runExperiment(const Experiment& experiment);

struct MultimodeResult {
  ResolvedDrive resolved;
  MultimodeTrajectory trajectory;
};

/// All modes propagated together with the off-diagonal couplings.
MultimodeResult runMultimode(const Experiment& experiment);

enum class SweepVariable { Omega, Delta, meanDeltaOmega, slabPosition, slabThickness, mp2Max, nPulse };
enum class SweepObservable { NGammaFinal, chi, peakOmega };

std::string_view toString(SweepVariable v);
SweepVariable sweepVariableFromString(std::string_view s);
std::string_view toString(SweepObservable o);
SweepObservable sweepObservableFromString(std::string_view s);

struct SweepSpec {
  SweepVariable variable = SweepVariable::Omega;
  double lo = 0.0;
  double hi = 1.0;
  std::size_t nPoints = 2;
  SweepObservable observable = SweepObservable::NGammaFinal;

  void validate() const;
  std::vector<double> values() const;
};

struct SweepPoint {
  double value = 0.0;
  double Omega = 0.0;
  double Delta = 0.0;
  double nGammaFinal = 0.0;
  double nGammaRwa = 0.0;
  double chi = 0.0;
  RwaBranch branch = RwaBranch::critical;
  /// Largest N_gamma over the trajectory samples.
  double nGammaMax = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  /// Index of the point maximising the observable.
  std::size_t peakIndex = 0;
  double peakValue = 0.0;
};

/// Copy of the experiment with the sweep variable set to `value`.
Experiment applySweepValue(const Experiment& experiment, SweepVariable variable, double value);

/// One integrateMaster + rwaSolve per point, run on up to `jobs` threads.
/// Results are in point order regardless of scheduling.
SweepResult runSweep(const Experiment& experiment, const SweepSpec& spec, unsigned jobs = 1);

/// Sweep over Omega or Delta.
SweepResult detuningScan(const Experiment& experiment, const SweepSpec& spec, unsigned jobs = 1);

struct PulseTrainReport {
  DriveSpec drive;
  RwaSolution rwa;
  std::vector<long> pulse;
  std::vector<double> nGamma;
  std::vector<double> nGammaRwa;
  double finalSqueeze = 0.0;
  /// chi * nPulse * T.
  double chiNT = 0.0;
};

/// N_gamma(nT) after every pulse n = 0..nPulse.
PulseTrainReport pulseTrain(const Experiment& experiment);

struct ExperimentEstimate {
  bool defined = false;
  std::string reason;
  double chiOverOmega0 = 0.0;
  /// delta_m^max / delta.
  double enhancement = 0.0;
  long nPulseRequired = 0;
  /// omega0 / chi.
  double qMin = 0.0;
  double omega0 = 0.0;
  double Omega = 0.0;
  double meanDeltaOmegaOverOmega0 = 0.0;
  double targetPhotons = 10.0;
};

/// Laboratory estimate from the closed-form plasma couplings at Delta = 0.
ExperimentEstimate estimate(const Experiment& experiment);

/// Smallest N with the RWA photon number reaching `target` after N periods,
/// or -1 when the target is never reached.
long pulsesForTarget(double coupling, double chi2, double period, double target);

struct FormulationComparison {
  std::vector<double> times;
  std::vector<double> nStandard;
  std::vector<double> nInstantaneous;
  /// Period averages on the inner times (half a period dropped at each end);
  /// NaN outside.
  std::vector<double> avgStandard;
  std::vector<double> avgInstantaneous;
  std::vector<double> relDeviation;
  /// Largest relative deviation of the averages where chi t >= 0.5.
  double maxDeviation = 0.0;
  double chi = 0.0;
  DriveSpec drive;
};

FormulationComparison compareFormulations(const Experiment& experiment);

}  // namespace dce
