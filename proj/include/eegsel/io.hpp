#pragma once

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "eegsel/common.hpp"

namespace eegsel {

// Shortest representation that round-trips the exact double.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct CsvMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<double> values;  // row-major

  double at(std::size_t r, std::size_t c) const { return values[r * n_cols + c]; }
};

// Plain numeric CSV: no header, one row per line, decimal or scientific
// notation. Throws data_error with row/column context on malformed input.
CsvMatrix read_csv_matrix(const std::filesystem::path& path);

// Writes with round-trip exact doubles via an element accessor.
void write_csv_matrix(const std::filesystem::path& path, std::size_t n_rows,
                      std::size_t n_cols, const double* row_major);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace eegsel
