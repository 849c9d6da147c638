#ifndef PILOTCAP_REPORT_HPP
#define PILOTCAP_REPORT_HPP

// Output plumbing for the CLI: run manifests, locale-independent number
// formatting, and CSV emission. Outputs are a pure function of the
// manifest, so identical invocations produce byte-identical files.

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pilotcap {

inline const char* kToolVersion = "1.0.0";

/// Formats a double with the given number of significant digits using
/// to_chars: no locale, shortest faithful representation.
inline std::string format_double(double v, int sig_digits = 10) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, sig_digits);
  return std::string(buf, res.ptr);
}

/// Fixed-point formatting (for the aligned text table).
inline std::string format_fixed(double v, int decimals) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::fixed, decimals);
  return std::string(buf, res.ptr);
}

/// Everything needed to reproduce a run, serialized into every output
/// file header.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters; // sorted, deterministic
  int quad_order = 96;
  std::optional<std::uint64_t> seed;

  /// One-line JSON rendering with keys in fixed order.
  std::string to_json() const {
    std::string s = "{\"command\":\"" + command + "\",\"parameters\":{";
    bool first = true;
    for (const auto& [k, v] : parameters) {
      if (!first) s += ",";
      first = false;
      s += "\"" + k + "\":\"" + v + "\"";
    }
    s += "},\"quad_order\":" + std::to_string(quad_order);
    if (seed) s += ",\"seed\":" + std::to_string(*seed);
    s += ",\"tool_version\":\"" + std::string(kToolVersion) + "\"}";
    return s;
  }
};

/// CSV with '#'-prefixed manifest header, a column-name row, then data
/// rows at 10 significant digits.
class CsvWriter {
public:
  CsvWriter(std::ostream& os, const RunManifest& manifest,
            const std::vector<std::string>& columns)
      : os_(os) {
    os_ << "# " << manifest.to_json() << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
      os_ << (i ? "," : "") << columns[i];
    os_ << "\n";
  }

  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i)
      os_ << (i ? "," : "") << format_double(values[i]);
    os_ << "\n";
  }

private:
  std::ostream& os_;
};

} // namespace pilotcap

#endif
