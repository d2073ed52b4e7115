#pragma once

#include <complex>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace gaflab {

inline constexpr const char* kVersion = "gaflab 0.1.0";

/// Effective configuration of one run, keyed by flag name; ordered so every
/// artifact lists it identically.
using ConfigEcho = std::map<std::string, std::string>;

/// "key=value; key=value" in key order.
std::string echo_line(const ConfigEcho& echo);

/// "# gaflab 0.1.0" and "# config: ..." lines that open every CSV file.
std::string csv_preamble(const ConfigEcho& echo);

/// Shortest round-trip decimal form; "nan" and "inf" spelled out.
std::string format_number(double x);

void write_file(const std::filesystem::path& path, const std::string& content);
/// Appends `rows`; writes `preamble` and `header` first when the file is new or empty.
void append_csv(const std::filesystem::path& path, const std::string& preamble, const std::string& header,
                const std::string& rows);

struct Series {
  std::string label;
  std::string color;
  std::vector<double> y;
  std::vector<double> error;  ///< optional symmetric error bars, same length as y
};

/// Log-log line plot; points with nonpositive coordinates are skipped.
std::string svg_loglog(const std::string& title, const std::string& x_label, const std::vector<double>& x,
                       const std::vector<Series>& series, const ConfigEcho& echo);

/// True zeros as circles, reconstructed zeros as crosses, the disk boundary dashed.
std::string svg_zero_overlay(const std::string& title, const std::vector<std::complex<double>>& truth,
                             const std::vector<std::complex<double>>& reconstructed, double disk_radius,
                             const ConfigEcho& echo);

}  // namespace gaflab
