#include "recsim/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace recsim {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
  if (!out_) throw std::runtime_error("cannot open for writing: " + path);
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  begin_row();
  for (const auto& c : columns) field(c);
  end_row();
}

void CsvWriter::begin_row() { first_in_row_ = true; }

void CsvWriter::sep() {
  if (!first_in_row_) out_ << ',';
  first_in_row_ = false;
}

void CsvWriter::field(double v) {
  sep();
  out_ << format_double(v);
}

void CsvWriter::field(long v) {
  sep();
  out_ << v;
}

void CsvWriter::field(int v) {
  sep();
  out_ << v;
}

void CsvWriter::field(const std::string& v) {
  sep();
  out_ << v;
}

void CsvWriter::end_row() { out_ << '\n'; }

}  // namespace recsim
