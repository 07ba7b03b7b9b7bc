#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vrprivacy/trace.hpp"

namespace vrp {

// Schema violation in an input CSV. `row` is the 1-based line number
// (the header is line 1); `column` names the offending field, if any.
class CsvFormatError : public std::runtime_error {
 public:
  CsvFormatError(std::size_t row, std::string column, const std::string& what);

  std::size_t row() const { return row_; }
  const std::string& column() const { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

inline constexpr double kTraceNormTolerance = 1e-6;

// Trace CSV: user_id,video_id,gop_index,actual_x,actual_y,actual_z with an
// optional pred_x,pred_y,pred_z tail. Rows of one trace are consecutive and
// gop_index counts up from 0.
std::vector<SessionTrace> ReadTraces(std::istream& in);
std::vector<SessionTrace> LoadTraces(const std::filesystem::path& path);
void WriteTraces(std::ostream& out, std::span<const SessionTrace> traces);
void SaveTraces(const std::filesystem::path& path, std::span<const SessionTrace> traces);

struct ResultRow {
  double q = 0.0;
  std::string policy;
  double pr_leak = 0.0;
  double mean_error_rad = 0.0;
  double mean_abs_noise_rad = 0.0;
  double qoe = 0.0;
  double pspr = 0.0;
};

struct TraceResultRow {
  double q = 0.0;
  std::string policy;
  int user_id = 0;
  int video_id = 0;
  double pr_leak = 0.0;
  double mean_error_rad = 0.0;
  double mean_abs_noise_rad = 0.0;
  double qoe = 0.0;
};

struct CurvePoint {
  std::string policy;
  double parameter = 0.0;
  double pr_leak = 0.0;
  double mean_error_rad = 0.0;
  double qoe = 0.0;
};

void WriteResults(std::ostream& out, std::span<const ResultRow> rows);
void WriteTraceResults(std::ostream& out, std::span<const TraceResultRow> rows);
void WriteCurves(std::ostream& out, std::span<const CurvePoint> points);

// Writes through a temporary file in the same directory. Throws
// std::runtime_error when the file cannot be written.
void SaveText(const std::filesystem::path& path, const std::string& text);

}  // namespace vrp
