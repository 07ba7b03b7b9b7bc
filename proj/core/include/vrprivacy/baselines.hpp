#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "vrprivacy/bpea.hpp"
#include "vrprivacy/leakage.hpp"
#include "vrprivacy/rng.hpp"
#include "vrprivacy/sphere.hpp"

namespace vrp {

enum class NoiseKind { kGaussian, kLaplace };

const char* ToString(NoiseKind kind);

/// Zero-mean coordinate noise. `value` is the Gaussian standard deviation or
/// the Laplace scale, in coordinate units.
struct NoiseScale {
  NoiseKind kind = NoiseKind::kGaussian;
  double value = 0.0;
};

/// Default one-dimensional search ranges and step.
inline constexpr double kGaussianSearchMax = 7.0;
inline constexpr double kLaplaceSearchMax = 6.0;
inline constexpr double kDefaultCalibrationStep = 0.05;

double DefaultSearchMax(NoiseKind kind);

/// Adds i.i.d. N(0, sigma^2) to each coordinate and renormalizes. A perturbed
/// vector of exactly zero length is redrawn.
SpherePoint GaussianObfuscate(const SpherePoint& v, double sigma, SeededRng& rng);

/// Adds i.i.d. Laplace(0, b) to each coordinate and renormalizes.
SpherePoint LaplaceObfuscate(const SpherePoint& v, double b, SeededRng& rng);

SpherePoint Obfuscate(const SpherePoint& v, const NoiseScale& scale, SeededRng& rng);

/// Effective prediction errors produced by a calibration set at a noise
/// scale. The seed is derived from (base seed, kind, scale) by the caller.
using ErrorPipeline = std::function<std::vector<double>(const NoiseScale& scale, std::uint64_t seed)>;

struct CalibrationResult {
  /// Smallest scanned scale meeting the requirement; empty when infeasible.
  std::optional<NoiseScale> scale;
  /// Scale with the lowest leakage seen, used when nothing is feasible.
  NoiseScale best_effort;
  /// Leakage at `scale`, or at `best_effort` when infeasible.
  double achieved_leakage = 1.0;
  std::size_t search_evals = 0;

  bool feasible() const { return scale.has_value(); }
};

/// Seed used for one calibration evaluation.
std::uint64_t CalibrationSeed(std::uint64_t base_seed, const NoiseScale& scale);

/// Forward scan over scale = 0, step, 2 step, ... up to search_max. Each
/// scale's errors are scored with LeakageSampleMean and the first scale with
/// leakage <= q is returned. Throws if the pipeline yields no errors.
CalibrationResult CalibrateNoiseScale(const ErrorPipeline& pipeline, Precision eps,
                                      PrivacyRequirement q, NoiseKind kind, double search_max,
                                      double step, std::uint64_t base_seed);

/// Fraction of traces whose leakage is at most q. Throws on an empty list.
double Pspr(std::span<const double> per_trace_leakage, PrivacyRequirement q);

}  // namespace vrp
