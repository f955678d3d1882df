#include "sohp/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sohp/errors.hpp"

namespace sohp {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  if (n_columns_ != 0) throw DomainError("CsvWriter: header already written");
  n_columns_ = columns.size();
  emit(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (n_columns_ == 0) throw DomainError("CsvWriter: header not written");
  if (cells.size() != n_columns_) {
    throw DomainError("CsvWriter: row width " + std::to_string(cells.size()) +
                      " does not match header width " + std::to_string(n_columns_));
  }
  emit(cells);
}

void CsvWriter::emit(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += cells[i];
  }
  buffer_ += '\n';
}

std::string sanitize_cell(const std::string& text) {
  std::string out = text;
  for (char& c : out) {
    if (c == ',') c = ';';
    if (c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace sohp
