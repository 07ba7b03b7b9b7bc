#include "vrprivacy/trace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vrp {
namespace {

constexpr int kMaxStepRedraws = 16;

double Latitude(const SpherePoint& p) { return std::asin(std::clamp(p.z(), -1.0, 1.0)); }

}  // namespace

void SessionTrace::Validate() const {
  const std::string id = "trace (user " + std::to_string(user_id) + ", video " +
                         std::to_string(video_id) + ")";
  if (actual.size() < kMinTraceGops) {
    throw std::invalid_argument(id + " has " + std::to_string(actual.size()) +
                                " GoPs; at least " + std::to_string(kMinTraceGops) +
                                " are required");
  }
  if (predicted && predicted->size() != actual.size()) {
    throw std::invalid_argument(id + " has a prediction list of the wrong length");
  }
}

double SampleVmfAngle(double concentration, SeededRng& rng) {
  if (!(concentration > 0.0)) throw std::invalid_argument("vMF concentration must be positive");
  if (std::isinf(concentration)) return 0.0;
  const double u = rng.Uniform();
  // Inverse CDF of w = cos(angle): w = 1 + log(u + (1 - u) e^{-2k}) / k.
  const double w =
      1.0 + std::log(u + (1.0 - u) * std::exp(-2.0 * concentration)) / concentration;
  return std::acos(std::clamp(w, -1.0, 1.0));
}

SessionTrace GenerateSyntheticTrace(int user_id, int video_id, const TraceSynthesisConfig& cfg,
                                    SeededRng& rng) {
  if (cfg.gops < kMinTraceGops) {
    throw std::invalid_argument("synthetic traces need at least 3 GoPs");
  }
  if (!(cfg.max_latitude > 0.0 && cfg.max_latitude <= 0.5 * kPi)) {
    throw std::invalid_argument("max latitude must lie in (0, pi/2]");
  }
  SessionTrace trace;
  trace.user_id = user_id;
  trace.video_id = video_id;
  trace.actual.reserve(cfg.gops);

  const double start_lat = std::clamp(0.2 * rng.Normal(), -cfg.max_latitude, cfg.max_latitude);
  SpherePoint current = SpherePoint::FromAngles(0.5 * kPi - start_lat, 2.0 * kPi * rng.Uniform());
  trace.actual.push_back(current);
  while (trace.actual.size() < cfg.gops) {
    for (int attempt = 0; attempt < kMaxStepRedraws; ++attempt) {
      const double angle = SampleVmfAngle(cfg.concentration, rng);
      const SpherePoint next = PointAtDistance(current, angle, 2.0 * kPi * rng.Uniform());
      if (std::abs(Latitude(next)) <= cfg.max_latitude) {
        current = next;
        break;
      }
    }
    trace.actual.push_back(current);
  }
  return trace;
}

std::vector<SpherePoint> PersistencePredict(std::span<const SpherePoint> viewpoints,
                                            std::size_t horizon) {
  std::vector<SpherePoint> out;
  out.reserve(viewpoints.size());
  for (std::size_t t = 0; t < viewpoints.size(); ++t) {
    out.push_back(viewpoints[t >= horizon ? t - horizon : 0]);
  }
  return out;
}

std::vector<SpherePoint> PersistencePredict(const SessionTrace& trace, std::size_t horizon) {
  return PersistencePredict(std::span<const SpherePoint>(trace.actual), horizon);
}

}  // namespace vrp
