#include "nhrm/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "nhrm/errors.hpp"

namespace nhrm {
namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw RangeError("parse_double: malformed number '" + s + "'");
  }
  return v;
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw IoError("write_csv: cannot open '" + path + "'");
  for (const auto& c : table.comments) out << "# " << c << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << table.columns[i] << (i + 1 < table.columns.size() ? "," : "");
  }
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw ShapeError("write_csv: row width differs from header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << row[i] << (i + 1 < row.size() ? "," : "");
    }
    out << '\n';
  }
  if (!out) throw IoError("write_csv: write failed for '" + path + "'");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("read_csv: cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::size_t start = 1;
      if (start < line.size() && line[start] == ' ') ++start;
      table.comments.push_back(line.substr(start));
      continue;
    }
    if (!have_header) {
      table.columns = split_line(line);
      have_header = true;
      continue;
    }
    auto cells = split_line(line);
    if (cells.size() != table.columns.size()) {
      throw ShapeError("read_csv: row width differs from header in '" +
                       path + "'");
    }
    table.rows.push_back(std::move(cells));
  }
  if (!have_header) throw ShapeError("read_csv: missing header in '" + path +
                                     "'");
  return table;
}

}  // namespace nhrm
