#include "vrprivacy/attacker_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace vrp {
namespace {

// Independent random streams of one oracle seed.
constexpr std::uint64_t kActualStream = 1;
constexpr std::uint64_t kAttackerStream = 2;
constexpr std::uint64_t kGridStream = 3;

}  // namespace

void OracleConfig::Validate() const {
  if (trials < 1000) throw std::invalid_argument("oracle needs at least 1000 trials");
  if (!(grid_resolution > 0.0 && grid_resolution <= 0.1)) {
    throw std::invalid_argument("grid resolution must lie in (0, 0.1]");
  }
}

SpherePoint OracleReferencePrediction() { return SpherePoint(0.3, -0.5, 0.81); }

LeakageEstimate EmpiricalConditionalLeakage(double e, double noise, Precision eps,
                                            const OracleConfig& cfg) {
  cfg.Validate();
  if (!(e >= 0.0 && e <= kPi)) throw std::invalid_argument("e must lie in [0, pi]");
  const double reported = e + noise;
  if (!(reported >= 0.0 && reported <= kPi)) {
    throw std::invalid_argument("uploaded error e + n must lie in [0, pi]");
  }

  const SpherePoint predicted = OracleReferencePrediction();
  std::size_t leaks = 0;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    SeededRng actual_rng(DeriveSeed({cfg.seed, kActualStream, t}));
    SeededRng attacker_rng(DeriveSeed({cfg.seed, kAttackerStream, t}));
    const SpherePoint actual = SampleOnCircle(predicted, e, actual_rng);
    const SpherePoint inferred = OptimalInferredViewpoint(predicted, reported, eps, attacker_rng);
    if (SphericalDistance(actual, inferred) <= eps.value()) ++leaks;
  }

  const double n = static_cast<double>(cfg.trials);
  const double p = static_cast<double>(leaks) / n;
  LeakageEstimate out;
  out.value = p;
  out.method = EstimateMethod::kMonteCarlo;
  out.trials = cfg.trials;
  out.half_width = 4.0 * std::sqrt(p * (1.0 - p) / n);
  return out;
}

std::vector<SpherePoint> FibonacciLattice(double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("lattice resolution must be positive");
  const auto count = static_cast<std::size_t>(std::ceil(4.0 * kPi / (resolution * resolution)));
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  std::vector<SpherePoint> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * static_cast<double>(i) + 0.5;
    points.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return points;
}

std::vector<CandidateScore> ScoreGridCandidates(double e, Precision eps, const OracleConfig& cfg) {
  cfg.Validate();
  if (!(e >= 0.0 && e <= kPi)) throw std::invalid_argument("e must lie in [0, pi]");

  const SpherePoint predicted = OracleReferencePrediction();
  SeededRng rng(DeriveSeed({cfg.seed, kGridStream}));
  const double offset = rng.Uniform();
  std::vector<SpherePoint> actual;
  actual.reserve(cfg.trials);
  const double n = static_cast<double>(cfg.trials);
  for (std::size_t k = 0; k < cfg.trials; ++k) {
    const double bearing = 2.0 * kPi * (static_cast<double>(k) + offset) / n;
    actual.push_back(PointAtDistance(predicted, e, bearing));
  }

  const double cos_eps = std::cos(eps.value());
  std::vector<CandidateScore> scores;
  for (const SpherePoint& candidate : FibonacciLattice(cfg.grid_resolution)) {
    std::size_t hits = 0;
    for (const SpherePoint& v : actual) {
      if (candidate.Dot(v) >= cos_eps) ++hits;
    }
    scores.push_back({candidate, SphericalDistance(candidate, predicted),
                      static_cast<double>(hits) / n});
  }
  return scores;
}

GridAttackResult GridAttackerBest(double e, Precision eps, const OracleConfig& cfg) {
  if (!(e > eps.value() && e < kPi - eps.value())) {
    throw std::invalid_argument("grid attacker is defined for eps < e < pi - eps");
  }
  const std::vector<CandidateScore> scores = ScoreGridCandidates(e, eps, cfg);
  const CandidateScore* best = &scores.front();
  for (const CandidateScore& s : scores) {
    if (s.probability > best->probability) best = &s;
  }
  return {best->point, best->distance_to_prediction, best->probability, scores.size()};
}

}  // namespace vrp
