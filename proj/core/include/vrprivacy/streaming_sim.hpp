#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vrprivacy/baselines.hpp"
#include "vrprivacy/bpea.hpp"
#include "vrprivacy/leakage.hpp"
#include "vrprivacy/rng.hpp"
#include "vrprivacy/sphere.hpp"
#include "vrprivacy/tiles.hpp"
#include "vrprivacy/trace.hpp"

namespace vrp {

// 9 pFoV tiles at 6.0 Mbit/s plus 23 tiles at 1.8 Mbit/s for a 1 s GoP.
inline constexpr double kDefaultBudgetMbit = 95.4;

struct QoeWeights {
  double central = 0.4;
  double fov = 0.3;
  double stability = 0.15;
  double continuity = 0.15;
};

struct SessionConfig {
  double gop_seconds = 1.0;
  double prediction_upload_seconds = 0.05;
  double error_upload_seconds = 0.05;
  double proactive_stream_seconds = 0.95;
  double budget_mbit = kDefaultBudgetMbit;
  QoeWeights weights;
  // GoPs between an upload and the GoP it steers.
  std::size_t prediction_horizon = 2;

  void Validate() const;
};

// Predicted field of view: the predicted gaze tile plus its 3x3 block.
struct Pfov {
  int center_tile = 0;
  std::vector<int> tiles;
};

Pfov PfovAround(const SpherePoint& predicted);

struct Allocation {
  std::array<QualityLevel, kTileCount> quality{};
  double used_mbit = 0.0;
  // Set when the budget cannot cover every zone tile at low quality.
  bool under_provisioned = false;
};

// Fills the zone at low quality, then upgrades to high in priority order:
// pFoV centre, rest of pFoV, rest of zone, then tiles outside the zone.
// Within a tier tiles go by ring distance from the pFoV centre.
Allocation AllocateQuality(const Zone& zone, const Pfov& pfov, const SessionConfig& cfg);

// What the viewer saw during one streamed GoP.
struct GopPlayback {
  int gaze_tile = 0;
  std::vector<int> fov_tiles;
  std::vector<int> zone_tiles;
  Allocation streamed;
};

struct QoeReport {
  double qoe = 1.0;
  double fov_coverage = 0.0;
  double mean_central_quality = 0.0;
  double mean_fov_quality = 0.0;
  double quality_variation = 0.0;
  double stall_fraction = 0.0;
};

QoeReport QoeScore(std::span<const GopPlayback> gops, const SessionConfig& cfg);

enum class PolicyKind { kNone, kBpea, kGaussian, kLaplace };

const char* ToString(PolicyKind kind);
PolicyKind ParsePolicyKind(const std::string& name);

struct ObfuscationPolicy {
  PolicyKind kind = PolicyKind::kNone;
  double q = 1.0;
  double tau = SolverMargin::kDefault;
  double scale = 0.0;

  static ObfuscationPolicy None() { return {}; }
  static ObfuscationPolicy Bpea(double q, double tau = SolverMargin::kDefault) {
    return {PolicyKind::kBpea, q, tau, 0.0};
  }
  static ObfuscationPolicy Gaussian(double sigma) {
    return {PolicyKind::kGaussian, 1.0, SolverMargin::kDefault, sigma};
  }
  static ObfuscationPolicy Laplace(double b) {
    return {PolicyKind::kLaplace, 1.0, SolverMargin::kDefault, b};
  }
  static ObfuscationPolicy Baseline(const NoiseScale& scale);

  bool is_baseline() const { return kind == PolicyKind::kGaussian || kind == PolicyKind::kLaplace; }
  NoiseScale noise_scale() const;
};

// Per-GoP upload stream of one session.
struct UploadStream {
  std::vector<SpherePoint> predicted;
  std::vector<double> errors;
  std::vector<double> noise;
  std::vector<double> uploaded;
  std::vector<double> leakage;
  // Spherical displacement the baseline noise put on each uploaded viewpoint.
  std::vector<double> displacement;
};

// Prediction errors a baseline mechanism yields: viewpoints are perturbed
// before prediction, the persistence predictor runs on the noisy history,
// and the error is measured against the clean viewpoint.
UploadStream BaselineUploads(const SessionTrace& trace, const NoiseScale& scale,
                             std::size_t horizon, Precision eps, SeededRng& rng);

// Uploads under None or B-PEA: the predictor runs on clean data and B-PEA
// perturbs only the reported error.
UploadStream ErrorNoiseUploads(const SessionTrace& trace, const ObfuscationPolicy& policy,
                               std::size_t horizon, Precision eps);

// Streams GoPs t >= horizon. GoP t is steered by prediction P~_t and the
// error uploaded `horizon` GoPs earlier.
std::vector<GopPlayback> StreamGops(std::span<const SpherePoint> actual,
                                    std::span<const SpherePoint> predicted,
                                    std::span<const double> uploaded_errors,
                                    const SessionConfig& cfg);

struct SessionResult {
  QoeReport qoe;
  LeakageEstimate leakage;
  std::size_t uploads = 0;
  long double leakage_sum = 0.0L;
  double mean_error = 0.0;
  double mean_uploaded_error = 0.0;
  // |n| for B-PEA; spherical displacement of the uploaded viewpoint for
  // the baselines.
  double mean_abs_noise = 0.0;
  std::vector<ZoneShape> zones;
};

SessionResult SimulateSession(const SessionTrace& trace, const ObfuscationPolicy& policy,
                              const SessionConfig& cfg, Precision eps, SeededRng& rng);

}  // namespace vrp
