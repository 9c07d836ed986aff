#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace dcov {

// In-memory CSV table: named numeric columns of equal length. Missing cells
// (the literal "NA") are stored as quiet NaN; every other cell is finite.
struct Table {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;  // parallel to names
  std::size_t n_rows = 0;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find(const std::string& name) const;

  static bool is_missing(double v) { return std::isnan(v); }
};

// Loads a headered CSV file. Ragged rows, absent headers, duplicate column
// names and cells that are neither finite numbers nor "NA" raise ParseError
// naming the line and column.
Table load_table(const std::string& path);

// Shortest decimal form that round-trips a double exactly (17 significant
// digits).
std::string format_double(double v);

// Writes contents to path through a temporary file and a rename, so a failed
// run never leaves a partial output behind.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace dcov
