#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fieldmarket/error.hpp"
#include "fieldmarket/io.hpp"

namespace fieldmarket::io {

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::io, "cannot write '" + path + "'");
  out << contents;
  if (!out) fail(ErrorKind::io, "write to '" + path + "' failed");
}

}  // namespace fieldmarket::io
