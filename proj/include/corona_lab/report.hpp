#pragma once

#include <string>
#include <vector>

#include "corona_lab/types.hpp"

namespace corona {

/// Fixed-column CSV with deterministic %.17g formatting (byte-identical for
/// identical inputs).
class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> columns);

  void add_row(const std::vector<double>& values);
  void add_row_mixed(const std::vector<std::string>& values);

  std::string to_string() const;
  void write(const std::string& path) const;

  static std::string format_double(double v);

private:
  std::vector<std::string> columns_;
  std::vector<std::string> rows_;
};

/// FNV-1a 64-bit hash, hex-encoded; used as the config fingerprint.
std::string fnv1a_hex(const std::string& data);

}  // namespace corona
