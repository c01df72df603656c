#include "opinionfp/harness/csv.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "opinionfp/harness/config.hpp"

namespace opinionfp::harness {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, std::vector<std::string> header)
    : path_(path), columns_(header.size()) {
  file_ = std::fopen(path.c_str(), "w");
  if (!file_) throw IoError("cannot open " + path + " for writing");
  raw_row(header);
}

CsvWriter::~CsvWriter() {
  if (file_) std::fclose(file_);
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw IoError(path_ + ": row width does not match the header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) std::fputc(',', file_);
    std::fputs(cells[i].c_str(), file_);
  }
  std::fputc('\n', file_);
}

void CsvWriter::row(std::span<const double> values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_real(v));
  raw_row(cells);
}

void CsvWriter::close() {
  if (!file_) return;
  const bool bad = std::ferror(file_) != 0;
  const bool close_failed = std::fclose(file_) != 0;
  file_ = nullptr;
  if (bad || close_failed) throw IoError("write to " + path_ + " failed");
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return columns[i];
  }
  throw ConfigError("fit.column", "no column '" + name + "'");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + " is empty");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  table.columns.resize(table.header.size());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col >= table.columns.size()) throw IoError(path + ":" + std::to_string(line_no) + ": too many fields");
      try {
        table.columns[col].push_back(std::stod(cell));
      } catch (const std::exception&) {
        table.columns[col].push_back(std::numeric_limits<double>::quiet_NaN());
      }
      ++col;
    }
    if (col != table.columns.size()) throw IoError(path + ":" + std::to_string(line_no) + ": too few fields");
  }
  return table;
}

}  // namespace opinionfp::harness
