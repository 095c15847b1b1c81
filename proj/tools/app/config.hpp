#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dce/experiments.hpp"

namespace dce::app {

/// Syntax or semantic error in a run config. `path` is the dotted field path
/// (empty for syntax errors); line/column are 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string message, std::string path = {}, std::size_t line = 0, std::size_t column = 0);

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::string path_;
  std::size_t line_;
  std::size_t column_;
};

struct OutputSettings {
  std::string directory = "out";
  /// Significant digits in CSV numbers; 0 writes the shortest round-trip form.
  int precision = 0;
};

struct RunConfig {
  Experiment experiment;
  /// "wall", "plasma" or "synthetic".
  std::string scenarioKind = "synthetic";
  /// Grid size of the mode-profile CSV.
  std::size_t profilePoints = 201;
  std::optional<SweepSpec> sweep;
  OutputSettings output;
};

/// Reads a TOML config, or a run manifest (JSON) carrying one inline.
RunConfig parseConfigFile(const std::filesystem::path& path);
RunConfig parseConfigString(std::string_view text, std::string_view source = "<config>");

/// Canonical TOML of a config with every default filled in; parsing it gives
/// back the same config.
std::string toToml(const RunConfig& config);

/// Re-checks the positivity rules after command-line overrides.
void validateConfig(const RunConfig& config);

}  // namespace dce::app
