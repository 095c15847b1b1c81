#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "app/commands.hpp"
#include "app/config.hpp"
#include "dce/error.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Flags {
  std::string config;
  std::optional<std::string> out;
  std::optional<unsigned> jobs;
  std::optional<double> tolOde;
  std::optional<double> tolQuad;
};

unsigned defaultJobs() {
  if (const char* env = std::getenv("DCE_JOBS"); env && *env) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0) return unsigned(v);
    throw dce::app::ConfigError("DCE_JOBS must be a positive integer", "DCE_JOBS");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical Casimir effect cavity simulator", "dce"};
  app.set_version_flag("--version", std::string(dce::app::kToolVersion));
  app.require_subcommand(1);
  Flags flags;

  const std::map<std::string, std::string> help{
      {"modes", "solve the initial cavity modes"},
      {"couplings", "tabulate delta omega(t) and g(t)"},
      {"evolve", "integrate the Bogoliubov coefficients"},
      {"rwa", "rotating-wave photon number"},
      {"sweep", "parameter sweep from the [sweep] section"},
      {"compare", "standard versus instantaneous-mode formulation"},
      {"estimate", "laboratory estimate of chi, pulse count and Q"}};
  for (const auto& name : dce::app::commandNames()) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--config", flags.config, "TOML config or run manifest")->required();
    sub->add_option("--out", flags.out, "output directory (overrides DCE_OUT_DIR and output.directory)");
    sub->add_option("--jobs", flags.jobs, "sweep worker threads (overrides DCE_JOBS)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol-ode", flags.tolOde, "ODE relative tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--tol-quad", flags.tolQuad, "quadrature relative tolerance")->check(CLI::PositiveNumber);
  }

  if (argc > 1 && argv[1][0] != '-') {
    const auto& names = dce::app::commandNames();
    if (std::find(names.begin(), names.end(), argv[1]) == names.end()) {
      std::cerr << "dce: unknown subcommand '" << argv[1] << "'\n" << app.help();
      return kExitUsage;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    dce::app::CommandContext ctx;
    ctx.command = command;
    ctx.config = dce::app::parseConfigFile(flags.config);
    if (flags.tolOde) {
      ctx.config.experiment.numerics.ode.relTol = *flags.tolOde;
    }
    if (flags.tolQuad) {
      ctx.config.experiment.numerics.quadrature.relTol = *flags.tolQuad;
      ctx.config.experiment.numerics.modeSolver.quadrature.relTol = *flags.tolQuad;
    }
    dce::app::validateConfig(ctx.config);
    if (flags.out) {
      ctx.outDir = *flags.out;
    } else if (const char* env = std::getenv("DCE_OUT_DIR"); env && *env) {
      ctx.outDir = env;
    } else {
      ctx.outDir = ctx.config.output.directory;
    }
    ctx.jobs = flags.jobs ? *flags.jobs : defaultJobs();

    dce::app::CommandResult res = dce::app::runCommand(ctx);
    for (const auto& line : res.summary) std::cout << line << "\n";
    for (const auto& f : res.files) std::cout << "wrote " << f.string() << "\n";
    return kExitOk;
  } catch (const dce::app::ConfigError& e) {
    std::cerr << "dce: config error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const dce::IntegrationError& e) {
    std::cerr << "dce " << command << ": numerical contract violated: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const dce::RootFindingError& e) {
    std::cerr << "dce " << command << ": mode solver failed in k = [" << e.kLo() << ", " << e.kHi()
              << "]: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const dce::Error& e) {
    std::cerr << "dce " << command << ": " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "dce " << command << ": " << e.what() << "\n";
    return kExitFailure;
  }
}
