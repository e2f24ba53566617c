#include "deto/io/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "deto/errors.hpp"

namespace deto::io {

CsvWriter::CsvWriter(const std::string& path) {
  file_ = std::fopen(path.c_str(), "wb");
  if (!file_) throw BadInput("cannot open for writing: " + path);
}

CsvWriter::~CsvWriter() {
  if (file_) std::fclose(static_cast<std::FILE*>(file_));
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  begin_row();
  for (const auto& c : columns) field(c);
  end_row();
}

void CsvWriter::begin_row() {
  row_open_ = true;
  first_field_ = true;
}

void CsvWriter::field(double value) { field(format_double(value)); }

void CsvWriter::field(long value) { field(std::to_string(value)); }

void CsvWriter::field(const std::string& value) {
  auto* f = static_cast<std::FILE*>(file_);
  if (!first_field_) std::fputc(',', f);
  std::fputs(value.c_str(), f);
  first_field_ = false;
}

void CsvWriter::end_row() {
  std::fputc('\n', static_cast<std::FILE*>(file_));
  row_open_ = false;
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

int CsvTable::column(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open for reading: " + path);
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    if (first) {
      while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
      first = false;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace deto::io
