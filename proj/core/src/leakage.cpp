#include "vrprivacy/leakage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace vrp {

Precision::Precision(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5 * kPi)) {
    throw std::invalid_argument("precision eps must lie in (0, pi/2), got " +
                                std::to_string(epsilon));
  }
}

const char* ToString(EstimateMethod method) {
  switch (method) {
    case EstimateMethod::kAnalytic:
      return "analytic";
    case EstimateMethod::kSampleMean:
      return "sample_mean";
    case EstimateMethod::kMonteCarlo:
      return "monte_carlo";
  }
  return "unknown";
}

double ConditionalLeakage(double e, Precision eps) {
  if (!(e >= 0.0 && e <= kPi)) {
    throw std::invalid_argument("prediction error must lie in [0, pi], got " + std::to_string(e));
  }
  const double epsilon = eps.value();
  if (e <= epsilon || e >= kPi - epsilon) return 1.0;
  return std::min(epsilon / (kPi * std::sin(e)), 1.0);
}

SpherePoint OptimalInferredViewpoint(const SpherePoint& predicted, double reported_error,
                                     Precision eps, SeededRng& rng) {
  if (!(reported_error >= 0.0 && reported_error <= kPi)) {
    throw std::invalid_argument("reported error must lie in [0, pi]");
  }
  if (reported_error <= eps.value()) return predicted;
  if (reported_error >= kPi - eps.value()) return predicted.Antipode();
  return SampleOnCircle(predicted, reported_error, rng);
}

LeakageEstimate LeakageSampleMean(std::span<const double> errors, Precision eps) {
  if (errors.empty()) {
    throw std::invalid_argument("leakage sample mean needs at least one error sample");
  }
  long double sum = 0.0L;
  for (double e : errors) sum += ConditionalLeakage(e, eps);
  LeakageEstimate out;
  out.value = static_cast<double>(sum / static_cast<long double>(errors.size()));
  out.method = EstimateMethod::kSampleMean;
  return out;
}

ErrorDistributionOptimum OptimalErrorDistribution(Precision eps) {
  return {0.5 * kPi, eps.value() / kPi};
}

double MinLeakageGridCheck(Precision eps, std::size_t bins) {
  if (bins < 2) throw std::invalid_argument("grid check needs at least 2 bins");
  double best = std::numeric_limits<double>::infinity();
  const double step = kPi / static_cast<double>(bins - 1);
  for (std::size_t i = 0; i < bins; ++i) {
    const double e = (i + 1 == bins) ? kPi : static_cast<double>(i) * step;
    best = std::min(best, ConditionalLeakage(e, eps));
  }
  return best;
}

}  // namespace vrp
