#pragma once

#include <string>
#include <vector>

namespace sohp {

/// Round-trip decimal formatting (17 significant digits) so CSV diffs are
/// exact across re-runs.
std::string format_double(double v);

class CsvWriter {
public:
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  const std::string& str() const { return buffer_; }

private:
  void emit(const std::vector<std::string>& cells);
  std::string buffer_;
  std::size_t n_columns_ = 0;
};

/// Commas and newlines in free-text cells (error messages) are replaced so
/// the table stays one-record-per-line.
std::string sanitize_cell(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace sohp
