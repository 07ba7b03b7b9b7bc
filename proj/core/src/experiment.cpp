#include "vrprivacy/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace vrp {
namespace {

// Domain tags keep the seed streams of different stages apart.
enum SeedTag : std::uint64_t {
  kUserTag = 0x75736572,
  kTraceTag = 0x74726163,
  kCalibrationTag = 0x63616c69,
  kEvalTag = 0x6576616c,
  kCurveTag = 0x63757276,
};

template <typename Fn>
void ParallelFor(std::size_t n, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

std::uint64_t SessionSeed(std::initializer_list<std::uint64_t> words, const SessionTrace& t) {
  std::vector<std::uint64_t> all(words);
  all.push_back(static_cast<std::uint64_t>(t.user_id));
  all.push_back(static_cast<std::uint64_t>(t.video_id));
  std::uint64_t h = 0;
  for (std::uint64_t w : all) h = DeriveSeed({h, w});
  return h;
}

}  // namespace

std::vector<double> ExperimentConfig::DefaultQGrid() {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
  return grid;
}

void ExperimentConfig::Validate() const {
  (void)Precision(eps);
  if (q_grid.empty()) throw std::invalid_argument("q grid must not be empty");
  for (double q : q_grid) (void)PrivacyRequirement(q);
  if (policies.empty()) throw std::invalid_argument("policy list must not be empty");
  if (num_users == 0 || num_train_videos == 0 || num_eval_videos == 0) {
    throw std::invalid_argument("user and video counts must be positive");
  }
  if (gops_per_video < kMinTraceGops) {
    throw std::invalid_argument("gops_per_video must be at least 3");
  }
  if (!(concentration > 0.0) || !(concentration_spread >= 0.0)) {
    throw std::invalid_argument("trace concentration must be positive, spread non-negative");
  }
  if (!(calibration_step > 0.0) || !(gaussian_search_max >= 0.0) ||
      !(laplace_search_max >= 0.0)) {
    throw std::invalid_argument("calibration search range is invalid");
  }
  (void)SolverMargin(tau);
  session().Validate();
}

SessionConfig ExperimentConfig::session() const {
  SessionConfig s;
  s.budget_mbit = budget_mbit;
  return s;
}

double ExperimentConfig::search_max(NoiseKind kind) const {
  return kind == NoiseKind::kGaussian ? gaussian_search_max : laplace_search_max;
}

SessionTrace SynthesizeTrace(const ExperimentConfig& cfg, int user_id, int video_id) {
  SeededRng user_rng(DeriveSeed({cfg.seed, kUserTag, static_cast<std::uint64_t>(user_id)}));
  TraceSynthesisConfig synth;
  synth.gops = cfg.gops_per_video;
  synth.concentration = cfg.concentration * std::exp(cfg.concentration_spread * user_rng.Normal());
  SeededRng rng(DeriveSeed({cfg.seed, kTraceTag, static_cast<std::uint64_t>(user_id),
                            static_cast<std::uint64_t>(video_id)}));
  return GenerateSyntheticTrace(user_id, video_id, synth, rng);
}

TraceSplit SynthesizeTraceSplit(const ExperimentConfig& cfg) {
  TraceSplit split;
  const std::size_t videos = cfg.num_train_videos + cfg.num_eval_videos;
  for (std::size_t u = 0; u < cfg.num_users; ++u) {
    for (std::size_t v = 0; v < videos; ++v) {
      auto& dest = v < cfg.num_train_videos ? split.train : split.eval;
      dest.push_back(SynthesizeTrace(cfg, static_cast<int>(u), static_cast<int>(v)));
    }
  }
  return split;
}

TraceSplit SplitByVideo(std::vector<SessionTrace> traces, std::size_t num_train_videos) {
  std::set<int> ids;
  for (const SessionTrace& t : traces) ids.insert(t.video_id);
  if (ids.size() <= num_train_videos) {
    throw std::invalid_argument("need more distinct videos than the training split takes");
  }
  std::set<int> train_ids(ids.begin(), std::next(ids.begin(), static_cast<long>(num_train_videos)));
  TraceSplit split;
  for (SessionTrace& t : traces) {
    (train_ids.count(t.video_id) ? split.train : split.eval).push_back(std::move(t));
  }
  return split;
}

ErrorPipeline MakeBaselinePipeline(std::span<const SessionTrace> traces,
                                   std::size_t prediction_horizon, Precision eps,
                                   TraceAccessLog* log) {
  if (traces.empty()) throw std::invalid_argument("calibration needs at least one trace");
  return [traces, prediction_horizon, eps, log](const NoiseScale& scale, std::uint64_t seed) {
    std::vector<std::vector<double>> parts(traces.size());
    for (const SessionTrace& t : traces) {
      if (log != nullptr) log->Record(t);
    }
    ParallelFor(traces.size(), [&](std::size_t i) {
      SeededRng rng(SessionSeed({seed}, traces[i]));
      parts[i] = BaselineUploads(traces[i], scale, prediction_horizon, eps, rng).errors;
    });
    std::vector<double> errors;
    for (const auto& p : parts) errors.insert(errors.end(), p.begin(), p.end());
    return errors;
  };
}

SetSummary EvaluatePolicy(std::span<const SessionTrace> traces, const ObfuscationPolicy& policy,
                          const SessionConfig& session, Precision eps,
                          std::initializer_list<std::uint64_t> seed_words) {
  if (traces.empty()) throw std::invalid_argument("evaluation needs at least one trace");
  SetSummary out;
  out.sessions.resize(traces.size());
  const std::vector<std::uint64_t> words(seed_words);
  ParallelFor(traces.size(), [&](std::size_t i) {
    std::uint64_t h = 0;
    for (std::uint64_t w : words) h = DeriveSeed({h, w});
    SeededRng rng(SessionSeed({h}, traces[i]));
    out.sessions[i] = SimulateSession(traces[i], policy, session, eps, rng);
  });

  long double leak = 0.0L, error = 0.0L, noise = 0.0L, qoe = 0.0L;
  std::size_t uploads = 0;
  for (const SessionResult& s : out.sessions) {
    leak += s.leakage_sum;
    error += static_cast<long double>(s.mean_error) * s.uploads;
    noise += static_cast<long double>(s.mean_abs_noise) * s.uploads;
    qoe += s.qoe.qoe;
    uploads += s.uploads;
    out.per_trace_leakage.push_back(s.leakage.value);
  }
  const auto n = static_cast<long double>(uploads);
  out.pr_leak = static_cast<double>(leak / n);
  out.mean_error = static_cast<double>(error / n);
  out.mean_abs_noise = static_cast<double>(noise / n);
  out.qoe = static_cast<double>(qoe / static_cast<long double>(out.sessions.size()));
  return out;
}

bool ExperimentResult::all_calibrations_feasible() const {
  return std::all_of(calibrations.begin(), calibrations.end(),
                     [](const CalibrationRecord& c) { return c.result.feasible(); });
}

ExperimentResult RunTradeoffExperiment(const ExperimentConfig& cfg, const TraceSplit& split) {
  cfg.Validate();
  if (split.train.empty() || split.eval.empty()) {
    throw std::invalid_argument("experiment needs non-empty training and evaluation splits");
  }
  const Precision eps(cfg.eps);
  const SessionConfig session = cfg.session();
  ExperimentResult result;

  const ErrorPipeline raw =
      MakeBaselinePipeline(split.train, session.prediction_horizon, eps, &result.calibration_access);
  // Every q scans the same scale ladder with the same seeds; compute each
  // rung once.
  std::map<std::uint64_t, std::vector<double>> cache;
  const ErrorPipeline pipeline = [&](const NoiseScale& scale, std::uint64_t seed) {
    auto it = cache.find(seed);
    if (it == cache.end()) it = cache.emplace(seed, raw(scale, seed)).first;
    return it->second;
  };

  for (double q : cfg.q_grid) {
    for (PolicyKind kind : cfg.policies) {
      ObfuscationPolicy policy;
      try {
        switch (kind) {
          case PolicyKind::kNone: policy = ObfuscationPolicy::None(); break;
          case PolicyKind::kBpea: policy = ObfuscationPolicy::Bpea(q, cfg.tau); break;
          case PolicyKind::kGaussian:
          case PolicyKind::kLaplace: {
            const NoiseKind nk =
                kind == PolicyKind::kGaussian ? NoiseKind::kGaussian : NoiseKind::kLaplace;
            const std::uint64_t base = DeriveSeed({cfg.seed, kCalibrationTag});
            CalibrationResult c = CalibrateNoiseScale(pipeline, eps, PrivacyRequirement(q), nk,
                                                      cfg.search_max(nk), cfg.calibration_step,
                                                      base);
            policy = ObfuscationPolicy::Baseline(c.scale.value_or(c.best_effort));
            result.calibrations.push_back({q, nk, c});
            break;
          }
        }
        const SetSummary s = EvaluatePolicy(split.eval, policy, session, eps,
                                            {cfg.seed, kEvalTag, KeyOf(q),
                                             static_cast<std::uint64_t>(kind)});
        result.rows.push_back({q, ToString(kind), s.pr_leak, s.mean_error, s.mean_abs_noise,
                               s.qoe, Pspr(s.per_trace_leakage, PrivacyRequirement(q))});
        for (std::size_t i = 0; i < split.eval.size(); ++i) {
          const SessionResult& r = s.sessions[i];
          result.trace_rows.push_back({q, ToString(kind), split.eval[i].user_id,
                                       split.eval[i].video_id, r.leakage.value, r.mean_error,
                                       r.mean_abs_noise, r.qoe.qoe});
        }
      } catch (const std::exception& e) {
        throw std::runtime_error("experiment point (q = " + std::to_string(q) + ", policy " +
                                 ToString(kind) + "): " + e.what());
      }
    }
  }
  return result;
}

std::vector<CurvePoint> RunTradeoffCurves(const ExperimentConfig& cfg, const TraceSplit& split,
                                          double scale_step) {
  cfg.Validate();
  if (!(scale_step > 0.0)) throw std::invalid_argument("scale step must be positive");
  const Precision eps(cfg.eps);
  const SessionConfig session = cfg.session();
  std::vector<CurvePoint> points;
  for (PolicyKind kind : cfg.policies) {
    if (kind == PolicyKind::kBpea) {
      for (double q : cfg.q_grid) {
        const SetSummary s = EvaluatePolicy(split.eval, ObfuscationPolicy::Bpea(q, cfg.tau),
                                            session, eps, {cfg.seed, kCurveTag, KeyOf(q), 1});
        points.push_back({ToString(kind), q, s.pr_leak, s.mean_error, s.qoe});
      }
    } else if (kind == PolicyKind::kGaussian || kind == PolicyKind::kLaplace) {
      const NoiseKind nk =
          kind == PolicyKind::kGaussian ? NoiseKind::kGaussian : NoiseKind::kLaplace;
      const auto steps =
          static_cast<std::size_t>(std::floor(cfg.search_max(nk) / scale_step + 1e-9));
      for (std::size_t i = 0; i <= steps; ++i) {
        const double scale = static_cast<double>(i) * scale_step;
        const SetSummary s =
            EvaluatePolicy(split.eval, ObfuscationPolicy::Baseline({nk, scale}), session, eps,
                           {cfg.seed, kCurveTag, KeyOf(scale), static_cast<std::uint64_t>(kind)});
        points.push_back({ToString(kind), scale, s.pr_leak, s.mean_error, s.qoe});
      }
    }
  }
  return points;
}

FrontierComparison CompareFrontiers(std::span<const CurvePoint> first,
                                    std::span<const CurvePoint> second, std::size_t levels) {
  if (first.empty() || second.empty()) throw std::invalid_argument("curves must not be empty");
  if (levels < 2) throw std::invalid_argument("need at least two leakage levels");
  auto range = [](std::span<const CurvePoint> c) {
    auto [lo, hi] = std::minmax_element(c.begin(), c.end(), [](const auto& a, const auto& b) {
      return a.pr_leak < b.pr_leak;
    });
    return std::make_pair(lo->pr_leak, hi->pr_leak);
  };
  const auto [lo1, hi1] = range(first);
  const auto [lo2, hi2] = range(second);
  const double lo = std::max(lo1, lo2);
  const double hi = std::min(hi1, hi2);
  FrontierComparison out;
  if (!(lo <= hi)) return out;

  constexpr double kTie = 1e-9;
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
  auto best = [](std::span<const CurvePoint> c, double level, double& qoe, double& error) {
    qoe = kNan;
    error = kNan;
    for (const CurvePoint& p : c) {
      if (p.pr_leak > level + kTie) continue;
      if (std::isnan(qoe) || p.qoe > qoe) qoe = p.qoe;
      if (std::isnan(error) || p.mean_error_rad < error) error = p.mean_error_rad;
    }
  };
  for (std::size_t i = 0; i < levels; ++i) {
    const double level = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(levels - 1);
    double q1, e1, q2, e2;
    best(first, level, q1, e1);
    best(second, level, q2, e2);
    out.levels.push_back(level);
    out.first_qoe.push_back(q1);
    out.second_qoe.push_back(q2);
    out.first_error.push_back(e1);
    out.second_error.push_back(e2);
  }
  return out;
}

}  // namespace vrp
