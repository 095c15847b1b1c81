#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"

namespace dce::app {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Subcommands in the order the usage text lists them.
const std::vector<std::string>& commandNames();

struct CommandContext {
  std::string command;
  RunConfig config;
  std::filesystem::path outDir;
  unsigned jobs = 1;
};

struct CommandResult {
  std::vector<std::filesystem::path> files;
  /// Short human-readable lines printed on stdout.
  std::vector<std::string> summary;
};

/// Runs one subcommand, writing its CSVs and `<command>.manifest.json` into
/// ctx.outDir. Numerical errors propagate as dce::Error.
CommandResult runCommand(const CommandContext& ctx);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a64(std::string_view data);

}  // namespace dce::app
