#include "vrprivacy/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include <fmt/format.h>

namespace vrp {
namespace {

constexpr std::string_view kTraceHeader = "user_id,video_id,gop_index,actual_x,actual_y,actual_z";
constexpr std::string_view kPredHeader = ",pred_x,pred_y,pred_z";
const char* const kColumns[] = {"user_id",  "video_id", "gop_index", "actual_x", "actual_y",
                                "actual_z", "pred_x",   "pred_y",    "pred_z"};

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T ParseField(std::string_view text, std::size_t row, std::size_t col) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw CsvFormatError(row, kColumns[col], "cannot parse '" + std::string(text) + "'");
  }
  return value;
}

SpherePoint ParsePoint(const std::vector<std::string_view>& f, std::size_t first,
                       std::size_t row) {
  double c[3];
  for (std::size_t i = 0; i < 3; ++i) {
    c[i] = ParseField<double>(f[first + i], row, first + i);
    if (!std::isfinite(c[i])) {
      throw CsvFormatError(row, kColumns[first + i], "coordinate is not finite");
    }
  }
  const double norm = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
  if (!(std::abs(norm - 1.0) <= kTraceNormTolerance)) {
    throw CsvFormatError(row, kColumns[first],
                         fmt::format("vector norm {} is not within {} of 1", norm,
                                     kTraceNormTolerance));
  }
  return SpherePoint(c[0], c[1], c[2]);
}

std::string FormatPoint(const SpherePoint& p) {
  return fmt::format("{},{},{}", p.x(), p.y(), p.z());
}

}  // namespace

CsvFormatError::CsvFormatError(std::size_t row, std::string column, const std::string& what)
    : std::runtime_error(fmt::format("row {}{}: {}", row,
                                     column.empty() ? "" : ", column " + column, what)),
      row_(row),
      column_(std::move(column)) {}

std::vector<SessionTrace> ReadTraces(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw CsvFormatError(1, "", "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  bool with_pred;
  if (line == kTraceHeader) {
    with_pred = false;
  } else if (line == std::string(kTraceHeader) + std::string(kPredHeader)) {
    with_pred = true;
  } else {
    throw CsvFormatError(1, "", "unexpected header '" + line + "'");
  }
  const std::size_t width = with_pred ? 9 : 6;

  std::vector<SessionTrace> traces;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = SplitFields(line);
    if (f.size() != width) {
      throw CsvFormatError(row, "",
                           fmt::format("expected {} fields, found {}", width, f.size()));
    }
    const int user = ParseField<int>(f[0], row, 0);
    const int video = ParseField<int>(f[1], row, 1);
    const long gop = ParseField<long>(f[2], row, 2);
    const SpherePoint actual = ParsePoint(f, 3, row);

    const bool continues =
        !traces.empty() && traces.back().user_id == user && traces.back().video_id == video;
    if (!continues) {
      if (gop != 0) throw CsvFormatError(row, "gop_index", "a trace must start at gop_index 0");
      SessionTrace t;
      t.user_id = user;
      t.video_id = video;
      if (with_pred) t.predicted.emplace();
      traces.push_back(std::move(t));
    } else if (gop != static_cast<long>(traces.back().actual.size())) {
      throw CsvFormatError(row, "gop_index",
                           fmt::format("expected {}, found {}", traces.back().actual.size(), gop));
    }
    traces.back().actual.push_back(actual);
    if (with_pred) traces.back().predicted->push_back(ParsePoint(f, 6, row));
  }
  for (const SessionTrace& t : traces) t.Validate();
  return traces;
}

std::vector<SessionTrace> LoadTraces(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file " + path.string());
  return ReadTraces(in);
}

void WriteTraces(std::ostream& out, std::span<const SessionTrace> traces) {
  const bool with_pred =
      !traces.empty() &&
      std::all_of(traces.begin(), traces.end(), [](const SessionTrace& t) {
        return t.predicted.has_value();
      });
  out << kTraceHeader << (with_pred ? kPredHeader : "") << '\n';
  for (const SessionTrace& t : traces) {
    for (std::size_t g = 0; g < t.actual.size(); ++g) {
      out << fmt::format("{},{},{},{}", t.user_id, t.video_id, g, FormatPoint(t.actual[g]));
      if (with_pred) out << ',' << FormatPoint((*t.predicted)[g]);
      out << '\n';
    }
  }
}

void SaveTraces(const std::filesystem::path& path, std::span<const SessionTrace> traces) {
  std::ostringstream out;
  WriteTraces(out, traces);
  SaveText(path, out.str());
}

void WriteResults(std::ostream& out, std::span<const ResultRow> rows) {
  out << "q,policy,pr_leak,mean_error_rad,mean_abs_noise_rad,qoe,pspr\n";
  for (const ResultRow& r : rows) {
    out << fmt::format("{},{},{},{},{},{},{}\n", r.q, r.policy, r.pr_leak, r.mean_error_rad,
                       r.mean_abs_noise_rad, r.qoe, r.pspr);
  }
}

void WriteTraceResults(std::ostream& out, std::span<const TraceResultRow> rows) {
  out << "q,policy,user_id,video_id,pr_leak,mean_error_rad,mean_abs_noise_rad,qoe\n";
  for (const TraceResultRow& r : rows) {
    out << fmt::format("{},{},{},{},{},{},{},{}\n", r.q, r.policy, r.user_id, r.video_id,
                       r.pr_leak, r.mean_error_rad, r.mean_abs_noise_rad, r.qoe);
  }
}

void WriteCurves(std::ostream& out, std::span<const CurvePoint> points) {
  out << "policy,param,pr_leak,mean_error_rad,qoe\n";
  for (const CurvePoint& p : points) {
    out << fmt::format("{},{},{},{},{}\n", p.policy, p.parameter, p.pr_leak, p.mean_error_rad,
                       p.qoe);
  }
}

void SaveText(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace vrp
