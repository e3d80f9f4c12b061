#include "eegsel/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace eegsel {

namespace {

// Parses one CSV line of doubles into out; returns the field count.
std::size_t parse_row(const std::string& line, std::size_t row,
                      const std::filesystem::path& path,
                      std::vector<double>& out) {
  std::size_t fields = 0;
  const char* p = line.data();
  const char* end = p + line.size();
  while (true) {
    // trim leading spaces
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
    const char* field_start = p;
    while (p < end && *p != ',') ++p;
    const char* field_end = p;
    while (field_end > field_start &&
           (field_end[-1] == ' ' || field_end[-1] == '\t' || field_end[-1] == '\r'))
      --field_end;
    double v = 0.0;
    const auto res = std::from_chars(field_start, field_end, v);
    if (res.ec != std::errc{} || res.ptr != field_end) {
      std::ostringstream msg;
      msg << path.string() << ": row " << row + 1 << ", column " << fields + 1
          << ": malformed numeric cell '"
          << std::string(field_start, field_end) << "'";
      throw data_error(msg.str());
    }
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << path.string() << ": row " << row + 1 << ", column " << fields + 1
          << ": non-finite value";
      throw data_error(msg.str());
    }
    out.push_back(v);
    ++fields;
    if (p == end) break;
    ++p;  // skip ','
  }
  return fields;
}

}  // namespace

CsvMatrix read_csv_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open file: " + path.string());
  CsvMatrix m;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    // tolerate a trailing newline / blank last line
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) {
      if (in.peek() == EOF) break;
      throw data_error(path.string() + ": blank row " + std::to_string(row + 1));
    }
    const std::size_t fields = parse_row(line, row, path, m.values);
    if (row == 0) {
      m.n_cols = fields;
    } else if (fields != m.n_cols) {
      std::ostringstream msg;
      msg << path.string() << ": row " << row + 1 << " has " << fields
          << " columns, expected " << m.n_cols;
      throw data_error(msg.str());
    }
    ++row;
  }
  m.n_rows = row;
  if (m.n_rows == 0) throw data_error(path.string() + ": empty file");
  return m;
}

void write_csv_matrix(const std::filesystem::path& path, std::size_t n_rows,
                      std::size_t n_cols, const double* row_major) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write file: " + path.string());
  std::string line;
  for (std::size_t r = 0; r < n_rows; ++r) {
    line.clear();
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (c) line += ',';
      line += format_double(row_major[r * n_cols + c]);
    }
    line += '\n';
    out << line;
  }
  if (!out) throw data_error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot write file: " + path.string());
  out << text;
  if (!out) throw data_error("write failed: " + path.string());
}

}  // namespace eegsel
