#pragma once

#include <string>
#include <vector>

namespace deto::io {

/// Minimal CSV writer with locale-independent, shortest round-trip ("%.17g")
/// number formatting so identical runs emit byte-identical files.
class CsvWriter {
public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void header(const std::vector<std::string>& columns);
  void begin_row();
  void field(double value);
  void field(long value);
  void field(const std::string& value);
  void end_row();

private:
  void* file_;  // FILE*
  bool row_open_ = false;
  bool first_field_ = true;
};

std::string format_double(double value);

/// Tiny CSV reader (no quoting; our own files only).
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  int column(const std::string& name) const;  // -1 when absent
};
CsvTable read_csv(const std::string& path);

}  // namespace deto::io
