#pragma once

#include <string>
#include <vector>

namespace nhrm {

// Plain comma-separated table with #-prefixed comment lines before the
// header. No quoting: cell values must not contain commas or newlines.
struct CsvTable {
  std::vector<std::string> comments;  // stored without the leading "# "
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// Shortest decimal string that parses back to exactly the same double
// (also handles nan/inf).
std::string format_double(double v);

// Strict full-string parse; throws RangeError on malformed input.
double parse_double(const std::string& s);

void write_csv(const std::string& path, const CsvTable& table);

// Reads a file produced by write_csv; throws IoError / ShapeError.
CsvTable read_csv(const std::string& path);

}  // namespace nhrm
