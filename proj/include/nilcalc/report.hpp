#pragma once

#include <string>
#include <vector>

namespace nilcalc {

inline constexpr const char* kVersion = "nilcalc 1.0.0";

/// Floating-point formatting used by every report: 17 significant digits,
/// enough to round-trip a double exactly.
std::string format_double(double v);

/// CSV with header row, comma separators, LF line endings, UTF-8.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
};

void write_file(const std::string& path, const std::string& content);

/// Two whitespace-separated columns of plot data.
std::string plot_data(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace nilcalc
