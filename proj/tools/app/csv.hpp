#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dce::app {

// Column contracts of every CSV the tool writes. The plotting scripts read
// these by name; do not reorder.
namespace headers {
inline const std::vector<std::string> modes{"index", "k", "omega0", "xi", "kprime_re", "kprime_im", "A",
                                            "B_re", "B_im", "C_re", "C_im", "D", "norm_residual"};
inline const std::vector<std::string> couplings{"t", "alpha", "beta", "delta_omega", "re_g", "im_g", "provenance"};
inline const std::vector<std::string> evolve{"t", "ReA", "ImA", "ReB", "ImB", "Ngamma", "r", "K", "residual"};
inline const std::vector<std::string> rwa{"t", "Ngamma_rwa", "chi", "branch"};
inline const std::vector<std::string> sweep{"value", "Omega", "Delta", "Ngamma_final", "Ngamma_rwa", "chi", "branch"};
inline const std::vector<std::string> compare{"t", "Ngamma_standard", "Ngamma_instantaneous", "avg_standard",
                                              "avg_instantaneous", "rel_deviation"};
inline const std::vector<std::string> estimate{"chiOverOmega0", "enhancement", "nPulseRequired", "qMin",
                                               "omega0", "Omega", "meanDeltaOmegaOverOmega0", "targetPhotons"};
inline const std::vector<std::string> pulseTrain{"pulse", "t", "Ngamma", "Ngamma_rwa"};

/// x, f_1 .. f_n
std::vector<std::string> modeProfile(std::size_t nModes);
/// t, N_1 .. N_n, residual
std::vector<std::string> multimode(std::size_t nModes);
}  // namespace headers

/// Shortest round-trip decimal when precision is 0, otherwise `precision`
/// significant digits. NaN is written as "nan".
std::string formatNumber(double v, int precision = 0);

/// RFC 4180 quoting: fields with commas, quotes or line breaks are quoted.
std::string escapeField(std::string_view field);

/// In-memory table written as RFC 4180 (CRLF line ends, UTF-8).
class CsvTable {
 public:
  CsvTable(std::vector<std::string> header, int precision = 0);

  CsvTable& add(double v);
  CsvTable& add(long v);
  CsvTable& add(std::size_t v) { return add(long(v)); }
  CsvTable& add(int v) { return add(long(v)); }
  CsvTable& add(std::string_view s);
  /// Closes the current row; throws when its width differs from the header.
  void endRow();

  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }
  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  int precision_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::string> current_;
};

/// Parses an RFC 4180 document into rows of fields.
std::vector<std::vector<std::string>> parseCsv(std::string_view text);

}  // namespace dce::app
