#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <string_view>

#include "hystbl/errors.hpp"

namespace hystbl {

// Full-precision formatting so emitted values survive a round trip.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw Error("cannot open output file: " + path);
  }

  void raw_row(std::string_view line) { out_ << line << "\n"; }

  template <class... Ts>
  void row(const Ts&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ","), first = false, write_cell(cells)), ...);
    out_ << "\n";
  }

 private:
  void write_cell(double v) { out_ << format_double(v); }
  void write_cell(int v) { out_ << v; }
  void write_cell(long v) { out_ << v; }
  void write_cell(std::size_t v) { out_ << v; }
  void write_cell(const char* s) { out_ << s; }
  void write_cell(const std::string& s) { out_ << s; }
  void write_cell(std::string_view s) { out_ << s; }
  void write_cell(char c) { out_ << c; }

  std::ofstream out_;
};

}  // namespace hystbl
