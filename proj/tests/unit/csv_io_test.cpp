#include "vrprivacy/csv_io.hpp"

#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

namespace vrp {
namespace {

std::vector<SessionTrace> SampleTraces(bool with_pred) {
  std::vector<SessionTrace> out;
  for (int u = 0; u < 2; ++u) {
    SeededRng rng(static_cast<std::uint64_t>(u) + 1);
    TraceSynthesisConfig cfg;
    cfg.gops = 7;
    SessionTrace t = GenerateSyntheticTrace(u, 10 + u, cfg, rng);
    if (with_pred) t.predicted = PersistencePredict(t, 2);
    out.push_back(std::move(t));
  }
  return out;
}

void ExpectSameTraces(const std::vector<SessionTrace>& a, const std::vector<SessionTrace>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].user_id, b[i].user_id);
    EXPECT_EQ(a[i].video_id, b[i].video_id);
    ASSERT_EQ(a[i].actual.size(), b[i].actual.size());
    for (std::size_t g = 0; g < a[i].actual.size(); ++g) {
      EXPECT_NEAR(SphericalDistance(a[i].actual[g], b[i].actual[g]), 0.0, 1e-9);
    }
    ASSERT_EQ(a[i].predicted.has_value(), b[i].predicted.has_value());
  }
}

TEST(TraceCsvTest, RoundTrip) {
  for (bool with_pred : {false, true}) {
    const auto traces = SampleTraces(with_pred);
    std::stringstream buf;
    WriteTraces(buf, traces);
    ExpectSameTraces(traces, ReadTraces(buf));
  }
}

TEST(TraceCsvTest, RoundTripThroughFile) {
  const auto traces = SampleTraces(false);
  const auto path = std::filesystem::temp_directory_path() / "vrp_csv_io_test.csv";
  SaveTraces(path, traces);
  ExpectSameTraces(traces, LoadTraces(path));
  std::filesystem::remove(path);
}

std::size_t ErrorRow(const std::string& text) {
  std::istringstream in(text);
  try {
    ReadTraces(in);
  } catch (const CsvFormatError& e) {
    return e.row();
  }
  return 0;
}

const std::string kHeader = "user_id,video_id,gop_index,actual_x,actual_y,actual_z\n";

TEST(TraceCsvTest, RejectsZeroVectorWithRow) {
  const std::string text = kHeader + "0,0,0,1,0,0\n0,0,1,0,0,0\n0,0,2,1,0,0\n";
  EXPECT_EQ(ErrorRow(text), 3u);
  std::istringstream in(text);
  try {
    ReadTraces(in);
    FAIL();
  } catch (const CsvFormatError& e) {
    EXPECT_EQ(e.column(), "actual_x");
  }
}

TEST(TraceCsvTest, RejectsNanAndBadNorm) {
  EXPECT_EQ(ErrorRow(kHeader + "0,0,0,nan,0,0\n"), 2u);
  EXPECT_EQ(ErrorRow(kHeader + "0,0,0,1,0,0\n0,0,1,1.001,0,0\n"), 3u);
}

TEST(TraceCsvTest, AcceptsNearUnitAndRenormalizes) {
  std::istringstream in(kHeader + "0,0,0,1.0000005,0,0\n0,0,1,0,1,0\n0,0,2,0,0,1\n");
  const auto traces = ReadTraces(in);
  ASSERT_EQ(traces.size(), 1u);
  EXPECT_DOUBLE_EQ(traces[0].actual[0].x(), 1.0);
}

TEST(TraceCsvTest, RejectsGapsAndBadFields) {
  EXPECT_EQ(ErrorRow(kHeader + "0,0,0,1,0,0\n0,0,2,1,0,0\n"), 3u);
  EXPECT_EQ(ErrorRow(kHeader + "0,0,1,1,0,0\n"), 2u);
  EXPECT_EQ(ErrorRow(kHeader + "0,0,0,1,0\n"), 2u);
  EXPECT_EQ(ErrorRow(kHeader + "a,0,0,1,0,0\n"), 2u);
  EXPECT_EQ(ErrorRow("user,video\n"), 1u);
}

TEST(TraceCsvTest, RejectsTooShortTrace) {
  std::istringstream in(kHeader + "0,0,0,1,0,0\n0,0,1,1,0,0\n");
  EXPECT_THROW(ReadTraces(in), std::invalid_argument);
}

TEST(TraceCsvTest, IngestsFullEvaluationSet) {
  std::vector<SessionTrace> traces;
  for (int u = 0; u < 48; ++u) {
    for (int v = 5; v < 9; ++v) {
      SessionTrace t;
      t.user_id = u;
      t.video_id = v;
      t.actual.assign(3, SpherePoint(0, 1, 0));
      traces.push_back(t);
    }
  }
  std::stringstream buf;
  WriteTraces(buf, traces);
  EXPECT_EQ(ReadTraces(buf).size(), 192u);
}

TEST(ResultsCsvTest, HeaderAndRoundTripFormatting) {
  std::ostringstream out;
  const std::vector<ResultRow> rows = {{0.05, "bpea", 0.1, 0.2, 0.3, 4.5, 1.0}};
  WriteResults(out, rows);
  EXPECT_EQ(out.str(),
            "q,policy,pr_leak,mean_error_rad,mean_abs_noise_rad,qoe,pspr\n"
            "0.05,bpea,0.1,0.2,0.3,4.5,1\n");
}

}  // namespace
}  // namespace vrp
