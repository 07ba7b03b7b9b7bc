#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "vrprivacy/baselines.hpp"
#include "vrprivacy/csv_io.hpp"
#include "vrprivacy/leakage.hpp"
#include "vrprivacy/streaming_sim.hpp"
#include "vrprivacy/trace.hpp"

namespace vrp {

struct ExperimentConfig {
  double eps = kDefaultEpsilon;
  std::vector<double> q_grid = DefaultQGrid();
  std::vector<PolicyKind> policies = {PolicyKind::kBpea, PolicyKind::kGaussian,
                                      PolicyKind::kLaplace};
  std::size_t num_users = 48;
  std::size_t num_train_videos = 5;
  std::size_t num_eval_videos = 4;
  std::size_t gops_per_video = 60;
  std::uint64_t seed = 2024;
  double budget_mbit = kDefaultBudgetMbit;
  double tau = SolverMargin::kDefault;
  double calibration_step = kDefaultCalibrationStep;
  double gaussian_search_max = kGaussianSearchMax;
  double laplace_search_max = kLaplaceSearchMax;
  // Synthetic head motion. Each user's concentration is the base value
  // scaled by exp(spread * N(0, 1)).
  double concentration = 37.0;
  double concentration_spread = 0.5;

  // 0, 0.05, ..., 1.
  static std::vector<double> DefaultQGrid();

  void Validate() const;
  SessionConfig session() const;
  double search_max(NoiseKind kind) const;
};

struct TraceSplit {
  std::vector<SessionTrace> train;
  std::vector<SessionTrace> eval;
};

SessionTrace SynthesizeTrace(const ExperimentConfig& cfg, int user_id, int video_id);

// Videos [0, num_train_videos) go to training, the next num_eval_videos
// to evaluation.
TraceSplit SynthesizeTraceSplit(const ExperimentConfig& cfg);

// Splits loaded traces by video id: the `num_train_videos` smallest
// distinct ids train, the rest evaluate.
TraceSplit SplitByVideo(std::vector<SessionTrace> traces, std::size_t num_train_videos);

// Records which (user, video) traces a computation read.
class TraceAccessLog {
 public:
  void Record(const SessionTrace& trace) { seen_.emplace(trace.user_id, trace.video_id); }
  const std::set<std::pair<int, int>>& seen() const { return seen_; }
  bool Touched(int user_id, int video_id) const { return seen_.count({user_id, video_id}) > 0; }

 private:
  std::set<std::pair<int, int>> seen_;
};

// Error pipeline over a fixed trace set for baseline calibration. Each call
// reproduces the evaluation path (viewpoint noise, persistence prediction)
// and concatenates the per-GoP errors.
ErrorPipeline MakeBaselinePipeline(std::span<const SessionTrace> traces,
                                   std::size_t prediction_horizon, Precision eps,
                                   TraceAccessLog* log = nullptr);

struct CalibrationRecord {
  double q = 0.0;
  NoiseKind kind = NoiseKind::kGaussian;
  CalibrationResult result;
};

struct SetSummary {
  double pr_leak = 0.0;
  double mean_error = 0.0;
  double mean_abs_noise = 0.0;
  double qoe = 0.0;
  std::vector<double> per_trace_leakage;
  std::vector<SessionResult> sessions;
};

// Runs one policy over a trace set. Session seeds derive from `seed_words`
// plus (user, video), so results do not depend on thread scheduling.
SetSummary EvaluatePolicy(std::span<const SessionTrace> traces, const ObfuscationPolicy& policy,
                          const SessionConfig& session, Precision eps,
                          std::initializer_list<std::uint64_t> seed_words);

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<TraceResultRow> trace_rows;
  std::vector<CalibrationRecord> calibrations;
  TraceAccessLog calibration_access;
  bool all_calibrations_feasible() const;
};

ExperimentResult RunTradeoffExperiment(const ExperimentConfig& cfg, const TraceSplit& split);

// Leakage/error/QoE curves on the evaluation split: baselines swept over
// their noise scale, B-PEA over the q grid.
std::vector<CurvePoint> RunTradeoffCurves(const ExperimentConfig& cfg, const TraceSplit& split,
                                          double scale_step = 0.1);

// Best QoE and smallest error each policy reaches at leakage <= L, for L on
// a uniform grid over the leakage range both curves cover.
struct FrontierComparison {
  std::vector<double> levels;
  std::vector<double> first_qoe;
  std::vector<double> second_qoe;
  std::vector<double> first_error;
  std::vector<double> second_error;
};

FrontierComparison CompareFrontiers(std::span<const CurvePoint> first,
                                    std::span<const CurvePoint> second, std::size_t levels);

}  // namespace vrp
