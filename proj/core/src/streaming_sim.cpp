#include "vrprivacy/streaming_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace vrp {
namespace {

constexpr double kBudgetSlack = 1e-9;

bool Contains(std::span<const int> tiles, int tile) {
  return std::find(tiles.begin(), tiles.end(), tile) != tiles.end();
}

// Ring distance of `tile` from `center`, with column distance measured the
// short way round the seam.
auto RingKey(int center, int tile) {
  const int dr = std::abs(TileRow(tile) - TileRow(center));
  const int raw = std::abs(TileCol(tile) - TileCol(center));
  const int dc = std::min(raw, kTileCols - raw);
  return std::make_tuple(std::max(dr, dc), dr, dc, tile);
}

void SortByRing(int center, std::vector<int>& tiles) {
  std::sort(tiles.begin(), tiles.end(),
            [center](int a, int b) { return RingKey(center, a) < RingKey(center, b); });
}

double Mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  long double sum = 0.0L;
  for (double v : values) sum += v;
  return static_cast<double>(sum / static_cast<long double>(values.size()));
}

}  // namespace

void SessionConfig::Validate() const {
  if (!(gop_seconds > 0.0)) throw std::invalid_argument("GoP duration must be positive");
  if (!(budget_mbit >= 0.0) || !std::isfinite(budget_mbit)) {
    throw std::invalid_argument("budget must be a finite non-negative number of Mbit");
  }
  if (prediction_upload_seconds < 0.0 || error_upload_seconds < 0.0 ||
      proactive_stream_seconds < 0.0) {
    throw std::invalid_argument("timeline durations must be non-negative");
  }
  if (prediction_upload_seconds + proactive_stream_seconds > gop_seconds + 1e-12) {
    throw std::invalid_argument("prediction upload plus proactive streaming exceeds the GoP gap");
  }
  const double w[] = {weights.central, weights.fov, weights.stability, weights.continuity};
  double total = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) throw std::invalid_argument("QoE weights must be non-negative");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("QoE weights must sum to 1");
  if (prediction_horizon < 1) throw std::invalid_argument("prediction horizon must be >= 1");
}

Pfov PfovAround(const SpherePoint& predicted) {
  const int center = TileOf(predicted);
  return Pfov{center, TileBlock(center, kFovRows, kFovCols)};
}

Allocation AllocateQuality(const Zone& zone, const Pfov& pfov, const SessionConfig& cfg) {
  if (!(cfg.budget_mbit >= 0.0)) throw std::invalid_argument("budget must be non-negative");
  Allocation out;
  const double budget = cfg.budget_mbit;
  const double low = BitrateMbps(QualityLevel::kLow) * cfg.gop_seconds;
  const double high = BitrateMbps(QualityLevel::kHigh) * cfg.gop_seconds;
  auto fits = [&](double cost) { return out.used_mbit + cost <= budget + kBudgetSlack; };

  // Base layer, highest-priority tiles first so a short budget keeps the centre.
  std::vector<int> base(zone.tiles);
  std::stable_partition(base.begin(), base.end(),
                        [&](int t) { return Contains(pfov.tiles, t); });
  SortByRing(pfov.center_tile, base);
  for (int t : base) {
    if (!fits(low)) {
      out.under_provisioned = true;
      break;
    }
    out.quality[static_cast<std::size_t>(t)] = QualityLevel::kLow;
    out.used_mbit += low;
  }
  if (out.under_provisioned) return out;

  std::vector<int> pfov_rest;
  std::vector<int> zone_rest;
  std::vector<int> outside;
  for (int t : pfov.tiles) {
    if (t != pfov.center_tile && zone.Contains(t)) pfov_rest.push_back(t);
  }
  for (int t : zone.tiles) {
    if (!Contains(pfov.tiles, t)) zone_rest.push_back(t);
  }
  for (int t = 0; t < kTileCount; ++t) {
    if (!zone.Contains(t)) outside.push_back(t);
  }
  SortByRing(pfov.center_tile, pfov_rest);
  SortByRing(pfov.center_tile, zone_rest);
  SortByRing(pfov.center_tile, outside);

  auto upgrade = [&](int t) {
    auto& q = out.quality[static_cast<std::size_t>(t)];
    const double delta = high - BitrateMbps(q) * cfg.gop_seconds;
    if (q == QualityLevel::kHigh || !fits(delta)) return;
    q = QualityLevel::kHigh;
    out.used_mbit += delta;
  };
  if (zone.Contains(pfov.center_tile)) upgrade(pfov.center_tile);
  for (int t : pfov_rest) upgrade(t);
  for (int t : zone_rest) upgrade(t);
  for (int t : outside) upgrade(t);
  return out;
}

QoeReport QoeScore(std::span<const GopPlayback> gops, const SessionConfig& cfg) {
  if (gops.empty()) throw std::invalid_argument("QoE needs at least one GoP");
  std::vector<double> central;
  std::vector<double> fov;
  std::vector<double> variation;
  std::vector<double> stalled;
  std::size_t fov_total = 0;
  std::size_t fov_in_zone = 0;
  double previous_fov = 0.0;
  for (std::size_t i = 0; i < gops.size(); ++i) {
    const GopPlayback& g = gops[i];
    if (g.fov_tiles.empty()) throw std::invalid_argument("GoP without FoV tiles");
    double fov_sum = 0.0;
    bool stall = false;
    for (int t : g.fov_tiles) {
      const QualityLevel q = g.streamed.quality[static_cast<std::size_t>(t)];
      fov_sum += QualityUtility(q);
      stall = stall || q == QualityLevel::kNone;
      if (Contains(g.zone_tiles, t)) ++fov_in_zone;
    }
    fov_total += g.fov_tiles.size();
    const double fov_q = fov_sum / static_cast<double>(g.fov_tiles.size());
    central.push_back(QualityUtility(g.streamed.quality[static_cast<std::size_t>(g.gaze_tile)]));
    fov.push_back(fov_q);
    stalled.push_back(stall ? 1.0 : 0.0);
    variation.push_back(stall ? 1.0 : (i == 0 ? 0.0 : std::abs(fov_q - previous_fov)));
    previous_fov = fov_q;
  }

  QoeReport r;
  r.mean_central_quality = Mean(central);
  r.mean_fov_quality = Mean(fov);
  r.quality_variation = Mean(variation);
  r.stall_fraction = Mean(stalled);
  r.fov_coverage = static_cast<double>(fov_in_zone) / static_cast<double>(fov_total);
  const QoeWeights& w = cfg.weights;
  const double total = w.central + w.fov + w.stability + w.continuity;
  if (!(total > 0.0)) throw std::invalid_argument("QoE weights must not all be zero");
  const double score = (w.central * r.mean_central_quality + w.fov * r.mean_fov_quality +
                        w.stability * (1.0 - r.quality_variation) +
                        w.continuity * (1.0 - r.stall_fraction)) /
                       total;
  r.qoe = std::clamp(1.0 + 4.0 * score, 1.0, 5.0);
  return r;
}

const char* ToString(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kNone: return "none";
    case PolicyKind::kBpea: return "bpea";
    case PolicyKind::kGaussian: return "gaussian";
    case PolicyKind::kLaplace: return "laplace";
  }
  return "?";
}

PolicyKind ParsePolicyKind(const std::string& name) {
  for (PolicyKind k :
       {PolicyKind::kNone, PolicyKind::kBpea, PolicyKind::kGaussian, PolicyKind::kLaplace}) {
    if (name == ToString(k)) return k;
  }
  throw std::invalid_argument("unknown policy '" + name + "'");
}

ObfuscationPolicy ObfuscationPolicy::Baseline(const NoiseScale& scale) {
  return scale.kind == NoiseKind::kGaussian ? Gaussian(scale.value) : Laplace(scale.value);
}

NoiseScale ObfuscationPolicy::noise_scale() const {
  if (!is_baseline()) throw std::logic_error("policy carries no viewpoint noise");
  return {kind == PolicyKind::kGaussian ? NoiseKind::kGaussian : NoiseKind::kLaplace, scale};
}

UploadStream BaselineUploads(const SessionTrace& trace, const NoiseScale& scale,
                             std::size_t horizon, Precision eps, SeededRng& rng) {
  trace.Validate();
  const std::size_t n = trace.gop_count();
  std::vector<SpherePoint> noisy;
  noisy.reserve(n);
  UploadStream s;
  for (const SpherePoint& v : trace.actual) {
    noisy.push_back(Obfuscate(v, scale, rng));
    s.displacement.push_back(SphericalDistance(v, noisy.back()));
  }
  s.predicted = PersistencePredict(noisy, horizon);
  for (std::size_t t = 0; t < n; ++t) {
    const double e = SphericalDistance(s.predicted[t], trace.actual[t]);
    s.errors.push_back(e);
    s.noise.push_back(0.0);
    s.uploaded.push_back(e);
    s.leakage.push_back(ConditionalLeakage(e, eps));
  }
  return s;
}

UploadStream ErrorNoiseUploads(const SessionTrace& trace, const ObfuscationPolicy& policy,
                               std::size_t horizon, Precision eps) {
  if (policy.is_baseline()) throw std::invalid_argument("baseline policies perturb viewpoints");
  trace.Validate();
  UploadStream s;
  s.predicted = trace.predicted ? *trace.predicted : PersistencePredict(trace, horizon);
  const bool bpea = policy.kind == PolicyKind::kBpea;
  const PrivacyRequirement q(policy.q);
  const SolverMargin tau(policy.tau);
  for (std::size_t t = 0; t < trace.gop_count(); ++t) {
    const double e = SphericalDistance(s.predicted[t], trace.actual[t]);
    const double n = bpea ? OptimalNoise(e, eps, q, tau) : 0.0;
    s.errors.push_back(e);
    s.noise.push_back(n);
    s.uploaded.push_back(std::clamp(e + n, 0.0, kPi));
    s.leakage.push_back(bpea ? ConditionalLeakageNoisy(e, n, eps) : ConditionalLeakage(e, eps));
    s.displacement.push_back(0.0);
  }
  return s;
}

std::vector<GopPlayback> StreamGops(std::span<const SpherePoint> actual,
                                    std::span<const SpherePoint> predicted,
                                    std::span<const double> uploaded_errors,
                                    const SessionConfig& cfg) {
  if (predicted.size() != actual.size() || uploaded_errors.size() != actual.size()) {
    throw std::invalid_argument("per-GoP streams must have equal length");
  }
  const std::size_t h = cfg.prediction_horizon;
  std::vector<GopPlayback> out;
  for (std::size_t t = h; t < actual.size(); ++t) {
    const Pfov pfov = PfovAround(predicted[t]);
    const Zone zone = ZoneFromError(uploaded_errors[t - h], pfov.center_tile);
    GopPlayback g;
    g.gaze_tile = TileOf(actual[t]);
    g.fov_tiles = FovTiles(actual[t]);
    g.zone_tiles = zone.tiles;
    g.streamed = AllocateQuality(zone, pfov, cfg);
    out.push_back(std::move(g));
  }
  return out;
}

SessionResult SimulateSession(const SessionTrace& trace, const ObfuscationPolicy& policy,
                              const SessionConfig& cfg, Precision eps, SeededRng& rng) {
  cfg.Validate();
  trace.Validate();
  if (trace.gop_count() <= cfg.prediction_horizon) {
    throw std::invalid_argument("trace too short for the prediction horizon");
  }
  const UploadStream s =
      policy.is_baseline()
          ? BaselineUploads(trace, policy.noise_scale(), cfg.prediction_horizon, eps, rng)
          : ErrorNoiseUploads(trace, policy, cfg.prediction_horizon, eps);

  const std::vector<GopPlayback> gops = StreamGops(trace.actual, s.predicted, s.uploaded, cfg);

  SessionResult r;
  r.qoe = QoeScore(gops, cfg);
  r.uploads = s.leakage.size();
  for (double p : s.leakage) r.leakage_sum += p;
  r.leakage = LeakageEstimate{
      static_cast<double>(r.leakage_sum / static_cast<long double>(r.uploads)),
      EstimateMethod::kSampleMean, r.uploads, std::nullopt};
  r.mean_error = Mean(s.errors);
  r.mean_uploaded_error = Mean(s.uploaded);
  if (policy.is_baseline()) {
    r.mean_abs_noise = Mean(s.displacement);
  } else {
    std::vector<double> magnitudes(s.noise.size());
    std::transform(s.noise.begin(), s.noise.end(), magnitudes.begin(),
                   [](double n) { return std::abs(n); });
    r.mean_abs_noise = Mean(magnitudes);
  }
  for (std::size_t t = cfg.prediction_horizon; t < s.uploaded.size(); ++t) {
    r.zones.push_back(ZoneShapeFromError(s.uploaded[t - cfg.prediction_horizon]));
  }
  return r;
}

}  // namespace vrp
