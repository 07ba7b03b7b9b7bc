#include "vrprivacy/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace vrp {
namespace {

template <typename Draw>
SpherePoint PerturbCoordinates(const SpherePoint& v, Draw&& draw) {
  for (;;) {
    const double x = v.x() + draw();
    const double y = v.y() + draw();
    const double z = v.z() + draw();
    if (x != 0.0 || y != 0.0 || z != 0.0) return SpherePoint(x, y, z);
  }
}

}  // namespace

const char* ToString(NoiseKind kind) {
  return kind == NoiseKind::kGaussian ? "gaussian" : "laplace";
}

double DefaultSearchMax(NoiseKind kind) {
  return kind == NoiseKind::kGaussian ? kGaussianSearchMax : kLaplaceSearchMax;
}

SpherePoint GaussianObfuscate(const SpherePoint& v, double sigma, SeededRng& rng) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("gaussian sigma must be non-negative");
  if (sigma == 0.0) return v;
  return PerturbCoordinates(v, [&] { return sigma * rng.Normal(); });
}

SpherePoint LaplaceObfuscate(const SpherePoint& v, double b, SeededRng& rng) {
  if (!(b >= 0.0)) throw std::invalid_argument("laplace scale must be non-negative");
  if (b == 0.0) return v;
  return PerturbCoordinates(v, [&] { return rng.Laplace(b); });
}

SpherePoint Obfuscate(const SpherePoint& v, const NoiseScale& scale, SeededRng& rng) {
  return scale.kind == NoiseKind::kGaussian ? GaussianObfuscate(v, scale.value, rng)
                                            : LaplaceObfuscate(v, scale.value, rng);
}

std::uint64_t CalibrationSeed(std::uint64_t base_seed, const NoiseScale& scale) {
  return DeriveSeed({base_seed, static_cast<std::uint64_t>(scale.kind), KeyOf(scale.value)});
}

CalibrationResult CalibrateNoiseScale(const ErrorPipeline& pipeline, Precision eps,
                                      PrivacyRequirement q, NoiseKind kind, double search_max,
                                      double step, std::uint64_t base_seed) {
  if (!(step > 0.0)) throw std::invalid_argument("calibration step must be positive");
  if (!(search_max >= 0.0)) throw std::invalid_argument("search range must be non-negative");

  CalibrationResult result;
  result.best_effort = {kind, 0.0};
  const auto steps = static_cast<std::size_t>(std::floor(search_max / step + 1e-9));
  for (std::size_t i = 0; i <= steps; ++i) {
    const NoiseScale scale{kind, static_cast<double>(i) * step};
    const std::vector<double> errors = pipeline(scale, CalibrationSeed(base_seed, scale));
    if (errors.empty()) throw std::invalid_argument("calibration set produced no errors");
    const double leakage = LeakageSampleMean(errors, eps).value;
    ++result.search_evals;
    if (i == 0 || leakage < result.achieved_leakage) {
      result.achieved_leakage = leakage;
      result.best_effort = scale;
    }
    if (leakage <= q.value()) {
      result.scale = scale;
      result.best_effort = scale;
      result.achieved_leakage = leakage;
      return result;
    }
  }
  return result;
}

double Pspr(std::span<const double> per_trace_leakage, PrivacyRequirement q) {
  if (per_trace_leakage.empty()) throw std::invalid_argument("PSPR needs at least one trace");
  std::size_t satisfied = 0;
  for (double p : per_trace_leakage) {
    if (p <= q.value()) ++satisfied;
  }
  return static_cast<double>(satisfied) / static_cast<double>(per_trace_leakage.size());
}

}  // namespace vrp
