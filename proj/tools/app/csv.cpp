#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace dce::app {

namespace headers {

std::vector<std::string> modeProfile(std::size_t nModes) {
  std::vector<std::string> h{"x"};
  for (std::size_t i = 1; i <= nModes; ++i) h.push_back("f_" + std::to_string(i));
  return h;
}

std::vector<std::string> multimode(std::size_t nModes) {
  std::vector<std::string> h{"t"};
  for (std::size_t i = 1; i <= nModes; ++i) h.push_back("N_" + std::to_string(i));
  h.push_back("residual");
  return h;
}

}  // namespace headers

std::string formatNumber(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::to_chars_result r = precision > 0
                               ? std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision)
                               : std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string escapeField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvTable::CsvTable(std::vector<std::string> header, int precision)
    : header_(std::move(header)), precision_(precision) {}

CsvTable& CsvTable::add(double v) {
  current_.push_back(formatNumber(v, precision_));
  return *this;
}

CsvTable& CsvTable::add(long v) {
  current_.push_back(std::to_string(v));
  return *this;
}

CsvTable& CsvTable::add(std::string_view s) {
  current_.push_back(escapeField(s));
  return *this;
}

void CsvTable::endRow() {
  if (current_.size() != header_.size()) {
    throw std::logic_error("CSV row has " + std::to_string(current_.size()) + " fields, header has " +
                           std::to_string(header_.size()));
  }
  rows_.push_back(std::move(current_));
  current_.clear();
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& fields, bool escape) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += escape ? escapeField(fields[i]) : fields[i];
    }
    out += "\r\n";
  };
  line(header_, true);
  for (const auto& r : rows_) line(r, false);
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  std::string s = str();
  f.write(s.data(), std::streamsize(s.size()));
  if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::vector<std::vector<std::string>> parseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quoted CSV field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dce::app
