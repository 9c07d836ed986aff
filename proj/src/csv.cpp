#include "dcov/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <unordered_set>

#include "dcov/errors.hpp"

namespace dcov {
namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

}  // namespace

std::size_t Table::find(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  return npos;
}

Table load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "' for reading");

  std::string line;
  if (!std::getline(in, line)) throw ParseError("'" + path + "': empty file, header required");

  Table table;
  {
    std::unordered_set<std::string> seen;
    for (const std::string& raw : split_line(line)) {
      const std::string name = trim(raw);
      if (name.empty()) throw ParseError("'" + path + "': line 1: empty column name in header");
      if (!seen.insert(name).second)
        throw ParseError("'" + path + "': line 1: duplicate column '" + name + "'");
      table.names.push_back(name);
    }
  }
  table.columns.assign(table.names.size(), {});

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) {
      if (in.peek() == std::ifstream::traits_type::eof()) break;  // trailing newline
      throw ParseError("'" + path + "': line " + std::to_string(line_no) + ": blank row");
    }
    const std::vector<std::string> fields = split_line(line);
    if (fields.size() != table.names.size())
      throw ParseError("'" + path + "': line " + std::to_string(line_no) + ": expected " +
                       std::to_string(table.names.size()) + " fields, found " +
                       std::to_string(fields.size()));
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const std::string cell = trim(fields[c]);
      if (cell == "NA") {
        table.columns[c].push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      errno = 0;
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size() || errno == ERANGE ||
          !std::isfinite(v))
        throw ParseError("'" + path + "': line " + std::to_string(line_no) + ", column '" +
                         table.names[c] + "': cannot parse '" + cell + "' as a finite number");
      table.columns[c].push_back(v);
    }
    ++table.n_rows;
  }
  return table;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot open '" + tmp + "' for writing");
    out << contents;
    if (!out.good()) throw ParseError("failed writing '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw ParseError("cannot move '" + tmp + "' to '" + path + "': " + ec.message());
}

}  // namespace dcov
