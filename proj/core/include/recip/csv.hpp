#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "recip/error.hpp"

namespace recip {

// Analytics tables print floats with 6 significant digits.
inline std::string format_g6(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

// Shortest representation that round-trips the exact double; used by
// dataset/model files so a reload is bit-identical.
inline std::string format_exact(double x) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw NumericError("double formatting failed");
  return std::string(buf, ptr);
}

inline double parse_double(const std::string& s, long line = -1) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e)
    throw ParseError("expected a number, got '" + s + "'", line);
  return v;
}

inline long parse_long(const std::string& s, long line = -1) {
  long v = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e)
    throw ParseError("expected an integer, got '" + s + "'", line);
  return v;
}

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

// Minimal CSV table writer: fixed header, rows of preformatted cells.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw IoError("cannot open for writing: " + path);
  }

  void header(const std::vector<std::string>& names) { row(names); }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  void close() { out_.close(); }

 private:
  std::ofstream out_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  CsvTable t;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (lineno == 1) {
      t.header = std::move(cells);
    } else {
      if (cells.size() != t.header.size())
        throw ParseError("row has " + std::to_string(cells.size()) + " cells, header has " +
                             std::to_string(t.header.size()),
                         lineno);
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

}  // namespace recip
