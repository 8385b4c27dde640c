#include "nilcalc/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nilcalc {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string CsvTable::to_string() const {
  std::string out;
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out += ",";
    out += header[i];
  }
  out += "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += row[i];
    }
    out += "\n";
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string plot_data(const std::vector<double>& x, const std::vector<double>& y) {
  std::string out;
  for (size_t i = 0; i < x.size() && i < y.size(); ++i)
    out += format_double(x[i]) + " " + format_double(y[i]) + "\n";
  return out;
}

}  // namespace nilcalc
