// vrprivacy: command-line front end for the leakage analysis, the B-PEA
// solver, the attacker oracle and the tradeoff experiment.

#include <cstdio>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "vrprivacy/attacker_oracle.hpp"
#include "vrprivacy/baselines.hpp"
#include "vrprivacy/bpea.hpp"
#include "vrprivacy/csv_io.hpp"
#include "vrprivacy/experiment.hpp"
#include "vrprivacy/leakage.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitInfeasible = 3;

struct Options {
  double eps = vrp::kDefaultEpsilon;
  std::optional<double> q;
  double tau = vrp::SolverMargin::kDefault;
  std::uint64_t seed = 2024;
  std::size_t trials = 100000;
  double budget_mbit = vrp::kDefaultBudgetMbit;
  std::string out;
  std::string traces;

  double e = 0.0;
  std::optional<double> n;
  double grid_resolution = 0.05;
  std::string kind = "gaussian";
  std::vector<double> q_grid;
  std::size_t users = 48;
  std::size_t train_videos = 5;
  std::size_t eval_videos = 4;
  std::size_t gops = 60;
  double concentration = 37.0;
  std::string per_trace_out;
  std::string curves_out;
};

void Emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::fputs(text.c_str(), stdout);
  } else {
    vrp::SaveText(out_path, text);
  }
}

vrp::ExperimentConfig MakeExperiment(const Options& o) {
  vrp::ExperimentConfig cfg;
  cfg.eps = o.eps;
  cfg.seed = o.seed;
  cfg.tau = o.tau;
  cfg.budget_mbit = o.budget_mbit;
  cfg.num_users = o.users;
  cfg.num_train_videos = o.train_videos;
  cfg.num_eval_videos = o.eval_videos;
  cfg.gops_per_video = o.gops;
  cfg.concentration = o.concentration;
  if (!o.q_grid.empty()) {
    cfg.q_grid = o.q_grid;
  } else if (o.q) {
    cfg.q_grid = {*o.q};
  }
  cfg.Validate();
  return cfg;
}

vrp::TraceSplit LoadSplit(const Options& o, const vrp::ExperimentConfig& cfg) {
  if (o.traces.empty()) return vrp::SynthesizeTraceSplit(cfg);
  return vrp::SplitByVideo(vrp::LoadTraces(o.traces), cfg.num_train_videos);
}

int RunLeakage(const Options& o) {
  const vrp::Precision eps(o.eps);
  const double value = o.n ? vrp::ConditionalLeakageNoisy(o.e, *o.n, eps)
                           : vrp::ConditionalLeakage(o.e, eps);
  fmt::print("e={} n={} eps={} leakage={}\n", o.e, o.n.value_or(0.0), o.eps, value);
  if (o.q) fmt::print("q={} satisfied={}\n", *o.q, value <= *o.q);
  return kExitOk;
}

int RunSolveNoise(const Options& o) {
  if (!o.q) throw std::invalid_argument("--q is required");
  const vrp::Precision eps(o.eps);
  const vrp::PrivacyRequirement q(*o.q);
  const double n = vrp::OptimalNoise(o.e, eps, q, vrp::SolverMargin(o.tau));
  fmt::print("e={} q={} n*={} uploaded={} leakage={}\n", o.e, *o.q, n, o.e + n,
             vrp::ConditionalLeakageNoisy(o.e, n, eps));
  return kExitOk;
}

int RunAttackSim(const Options& o) {
  const vrp::Precision eps(o.eps);
  vrp::OracleConfig cfg;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.grid_resolution = o.grid_resolution;
  cfg.Validate();
  const double n = o.n.value_or(0.0);
  const vrp::LeakageEstimate est = vrp::EmpiricalConditionalLeakage(o.e, n, eps, cfg);
  const double analytic = n == 0.0 ? vrp::ConditionalLeakage(o.e, eps)
                                   : vrp::ConditionalLeakageNoisy(o.e, n, eps);
  fmt::print("e={} n={} trials={} empirical={} half_width={} analytic={}\n", o.e, n, o.trials,
             est.value, est.half_width.value_or(0.0), analytic);
  if (n == 0.0 && o.e > o.eps && o.e < vrp::kPi - o.eps) {
    const vrp::GridAttackResult g = vrp::GridAttackerBest(o.e, eps, cfg);
    fmt::print("grid candidates={} best_distance={} best_probability={}\n", g.candidates,
               g.best_distance, g.probability);
  }
  return kExitOk;
}

int RunCalibrate(const Options& o) {
  if (!o.q) throw std::invalid_argument("--q is required");
  const vrp::ExperimentConfig cfg = MakeExperiment(o);
  const vrp::NoiseKind kind = o.kind == "laplace" ? vrp::NoiseKind::kLaplace
                              : o.kind == "gaussian"
                                  ? vrp::NoiseKind::kGaussian
                                  : throw std::invalid_argument("--kind must be gaussian or laplace");
  const vrp::TraceSplit split = LoadSplit(o, cfg);
  const vrp::Precision eps(cfg.eps);
  const auto pipeline =
      vrp::MakeBaselinePipeline(split.train, cfg.session().prediction_horizon, eps);
  const vrp::CalibrationResult r = vrp::CalibrateNoiseScale(
      pipeline, eps, vrp::PrivacyRequirement(*o.q), kind, cfg.search_max(kind),
      cfg.calibration_step, cfg.seed);
  if (!r.feasible()) {
    fmt::print("kind={} q={} infeasible best_effort_scale={} leakage={} evals={}\n", o.kind,
               *o.q, r.best_effort.value, r.achieved_leakage, r.search_evals);
    return kExitInfeasible;
  }
  fmt::print("kind={} q={} scale={} leakage={} evals={}\n", o.kind, *o.q, r.scale->value,
             r.achieved_leakage, r.search_evals);
  return kExitOk;
}

int RunTradeoff(const Options& o) {
  const vrp::ExperimentConfig cfg = MakeExperiment(o);
  const vrp::TraceSplit split = LoadSplit(o, cfg);
  const vrp::ExperimentResult result = vrp::RunTradeoffExperiment(cfg, split);
  std::ostringstream rows;
  vrp::WriteResults(rows, result.rows);
  Emit(o.out, rows.str());
  if (!o.per_trace_out.empty()) {
    std::ostringstream per_trace;
    vrp::WriteTraceResults(per_trace, result.trace_rows);
    vrp::SaveText(o.per_trace_out, per_trace.str());
  }
  if (!o.curves_out.empty()) {
    std::ostringstream curves;
    const auto points = vrp::RunTradeoffCurves(cfg, split);
    vrp::WriteCurves(curves, points);
    vrp::SaveText(o.curves_out, curves.str());
  }
  if (!result.all_calibrations_feasible()) {
    for (const auto& c : result.calibrations) {
      if (!c.result.feasible()) {
        fmt::print(stderr, "infeasible calibration: {} q={} (best effort scale {}, leakage {})\n",
                   vrp::ToString(c.kind), c.q, c.result.best_effort.value,
                   c.result.achieved_leakage);
      }
    }
    return kExitInfeasible;
  }
  return kExitOk;
}

int RunGenTraces(const Options& o) {
  const vrp::ExperimentConfig cfg = MakeExperiment(o);
  const vrp::TraceSplit split = vrp::SynthesizeTraceSplit(cfg);
  std::vector<vrp::SessionTrace> all = split.train;
  all.insert(all.end(), split.eval.begin(), split.eval.end());
  std::ostringstream out;
  vrp::WriteTraces(out, all);
  Emit(o.out, out.str());
  return kExitOk;
}

void AddCommon(CLI::App* cmd, Options& o) {
  cmd->add_option("--eps", o.eps, "attacker precision in radians")->capture_default_str();
  cmd->add_option("--q", o.q, "privacy requirement in [0, 1]");
  cmd->add_option("--tau", o.tau, "solver margin in radians")->capture_default_str();
  cmd->add_option("--seed", o.seed, "base seed")->capture_default_str();
  cmd->add_option("--trials", o.trials, "Monte-Carlo trials")->capture_default_str();
  cmd->add_option("--budget-mbit", o.budget_mbit, "streaming budget per GoP")
      ->capture_default_str();
  cmd->add_option("--out", o.out, "output path ('-' for stdout)");
}

void AddExperimentFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--traces", o.traces, "trace CSV; synthesized when absent");
  cmd->add_option("--users", o.users, "synthetic users")->capture_default_str();
  cmd->add_option("--train-videos", o.train_videos, "videos per user used for calibration")
      ->capture_default_str();
  cmd->add_option("--eval-videos", o.eval_videos, "videos per user used for evaluation")
      ->capture_default_str();
  cmd->add_option("--gops", o.gops, "GoPs per synthetic video")->capture_default_str();
  cmd->add_option("--concentration", o.concentration, "head-motion concentration")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Viewpoint-leakage analysis and B-PEA privacy tooling"};
  app.require_subcommand(1);
  Options o;

  auto* leakage = app.add_subcommand("leakage", "conditional leakage for error e and noise n");
  AddCommon(leakage, o);
  leakage->add_option("--e", o.e, "prediction error in radians")->required();
  leakage->add_option("--n", o.n, "noise added to the uploaded error");

  auto* solve = app.add_subcommand("solve-noise", "optimal B-PEA noise for e and q");
  AddCommon(solve, o);
  solve->add_option("--e", o.e, "prediction error in radians")->required();

  auto* attack = app.add_subcommand("attack-sim", "Monte-Carlo attacker and grid search");
  AddCommon(attack, o);
  attack->add_option("--e", o.e, "prediction error in radians")->required();
  attack->add_option("--n", o.n, "noise added to the uploaded error");
  attack->add_option("--grid-resolution", o.grid_resolution, "candidate lattice spacing")
      ->capture_default_str();

  auto* calibrate = app.add_subcommand("calibrate", "search the smallest baseline noise scale");
  AddCommon(calibrate, o);
  AddExperimentFlags(calibrate, o);
  calibrate->add_option("--kind", o.kind, "gaussian or laplace")->capture_default_str();

  auto* tradeoff = app.add_subcommand("tradeoff", "full privacy/QoE experiment to CSV");
  AddCommon(tradeoff, o);
  AddExperimentFlags(tradeoff, o);
  tradeoff->add_option("--q-grid", o.q_grid, "explicit q values (default 0, 0.05, ..., 1)");
  tradeoff->add_option("--per-trace-out", o.per_trace_out, "per (q, policy, user, video) CSV");
  tradeoff->add_option("--curves-out", o.curves_out, "leakage/error/QoE curve CSV");

  auto* gen = app.add_subcommand("gen-traces", "write synthetic traces as CSV");
  AddCommon(gen, o);
  AddExperimentFlags(gen, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (leakage->parsed()) return RunLeakage(o);
    if (solve->parsed()) return RunSolveNoise(o);
    if (attack->parsed()) return RunAttackSim(o);
    if (calibrate->parsed()) return RunCalibrate(o);
    if (tradeoff->parsed()) return RunTradeoff(o);
    if (gen->parsed()) return RunGenTraces(o);
  } catch (const vrp::CsvFormatError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return kExitInvalid;
}
