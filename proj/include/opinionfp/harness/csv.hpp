#pragma once

#include <cstdio>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace opinionfp::harness {

/// "%.16e": 17 significant digits, enough to round-trip a double.
std::string format_real(double x);

/// Comma-separated file with a header row. Numbers go through format_real.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::vector<std::string> header);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(std::span<const double> values);
  void row(std::initializer_list<double> values) { row(std::span<const double>(values.begin(), values.size())); }
  /// Mixed row of preformatted cells.
  void raw_row(const std::vector<std::string>& cells);
  /// Flushes and reports write errors as IoError.
  void close();

 private:
  std::string path_;
  std::size_t columns_;
  std::FILE* file_ = nullptr;
};

/// Columns of a CSV written by CsvWriter, by header name.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  const std::vector<double>& column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

}  // namespace opinionfp::harness
