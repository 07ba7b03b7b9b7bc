#include "vrprivacy/bpea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace vrp {
namespace {

// Tolerance for e + n landing a rounding step outside [0, pi].
constexpr double kRangeSlack = 1e-12;

double LowerBoundary(double e, double epsilon) { return epsilon - e; }
double UpperBoundary(double e, double epsilon) { return (kPi - e) - epsilon; }

// Middle-region leakage as a function of |n|. Non-increasing in |n|.
double MiddleLeakage(double e, double magnitude, Precision eps) {
  const double arc = EpsilonTilde(magnitude, eps);
  if (arc <= 0.0) return 0.0;
  return std::min(arc / (kPi * std::sin(e)), 1.0);
}

// Pushes `magnitude` up until MiddleLeakage(e, magnitude) <= q holds in
// floating point. The closed form can land a few ulps short.
double RaiseUntilFeasible(double e, double magnitude, Precision eps, double q) {
  double step = std::numeric_limits<double>::denorm_min();
  for (int i = 0; MiddleLeakage(e, magnitude, eps) > q; ++i) {
    if (i > 2100) throw std::logic_error("noise magnitude failed to reach the target leakage");
    step = std::max(step * 2.0, std::nextafter(magnitude, kPi) - magnitude);
    magnitude += step;
  }
  return magnitude;
}

// arccos(cos eps / cos(q pi sin e)), saturating at 0 once q pi sin e >= eps.
double ClosedFormMagnitude(double e, Precision eps, double q) {
  const double target_arc = std::min(q * kPi * std::sin(e), eps.value());
  if (target_arc == 0.0) return eps.value();
  return std::acos(std::min(std::cos(eps.value()) / std::cos(target_arc), 1.0));
}

// Smallest |n| whose middle-region leakage is at most q.
double MiddleMagnitude(double e, Precision eps, double q) {
  return RaiseUntilFeasible(e, ClosedFormMagnitude(e, eps, q), eps, q);
}

double RequireError(double e) {
  if (!(e >= 0.0 && e <= kPi)) {
    throw std::invalid_argument("prediction error must lie in [0, pi], got " + std::to_string(e));
  }
  return e;
}

}  // namespace

PrivacyRequirement::PrivacyRequirement(double q) : q_(q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("privacy requirement q must lie in [0, 1], got " +
                                std::to_string(q));
  }
}

SolverMargin::SolverMargin(double tau) : tau_(tau) {
  if (!(tau > 0.0 && std::isfinite(tau))) {
    throw std::invalid_argument("solver margin tau must be positive, got " + std::to_string(tau));
  }
}

NoiseRegion ClassifyNoise(double e, double noise, Precision eps) {
  if (noise <= LowerBoundary(e, eps.value())) return NoiseRegion::kLow;
  if (noise >= UpperBoundary(e, eps.value())) return NoiseRegion::kHigh;
  return NoiseRegion::kMiddle;
}

double EpsilonTilde(double noise, Precision eps) {
  const double epsilon = eps.value();
  const double m = std::min(std::abs(noise), epsilon);
  if (m == 0.0) return epsilon;
  const double ratio = std::min(std::cos(epsilon) / std::cos(m), 1.0);
  return std::acos(ratio);
}

double ConditionalLeakageNoisy(double e, double noise, Precision eps) {
  RequireError(e);
  if (!(noise >= -e - kRangeSlack && noise <= (kPi - e) + kRangeSlack)) {
    throw std::invalid_argument("noise " + std::to_string(noise) + " puts the uploaded error " +
                                "outside [0, pi] for e = " + std::to_string(e));
  }
  const double epsilon = eps.value();
  const NoiseRegion region = ClassifyNoise(e, noise, eps);
  if (region == NoiseRegion::kMiddle) return MiddleLeakage(e, std::abs(noise), eps);
  if (e <= epsilon) return region == NoiseRegion::kLow ? 1.0 : 0.0;
  if (e >= kPi - epsilon) return region == NoiseRegion::kHigh ? 1.0 : 0.0;
  return 0.0;
}

double NoiseMagnitudeForLeakage(double e, Precision eps, PrivacyRequirement q) {
  RequireError(e);
  const double target_arc = q.value() * kPi * std::sin(e);
  if (!(target_arc <= eps.value() && target_arc < 0.5 * kPi)) {
    throw std::domain_error("no middle-region noise reaches leakage q: q pi sin e exceeds eps");
  }
  return ClosedFormMagnitude(e, eps, q.value());
}

double OptimalNoise(double e, Precision eps, PrivacyRequirement q, SolverMargin tau) {
  RequireError(e);
  const double epsilon = eps.value();
  const double target = q.value();
  if (target >= 1.0) return 0.0;

  const double lower = LowerBoundary(e, epsilon);
  const double upper = UpperBoundary(e, epsilon);

  if (e <= epsilon) {
    // Negative noise keeps the attacker on the prediction (leakage 1).
    if (MiddleLeakage(e, std::abs(lower), eps) <= target) return lower + tau.value();
    const double magnitude = MiddleMagnitude(e, eps, target);
    return magnitude < upper ? magnitude : upper;
  }

  if (e >= kPi - epsilon) {
    if (MiddleLeakage(e, std::abs(upper), eps) <= target) return upper - tau.value();
    const double magnitude = MiddleMagnitude(e, eps, target);
    return -magnitude > lower ? -magnitude : lower;
  }

  if (MiddleLeakage(e, 0.0, eps) <= target) return 0.0;
  const double magnitude = MiddleMagnitude(e, eps, target);
  const double eta = std::min({std::abs(lower), upper, magnitude});
  if (std::abs(lower) == eta) return lower;
  if (upper == eta) return upper;
  // Prefer the larger upload: it only widens the streamed zone.
  return magnitude;
}

double ObfuscateError(double e, Precision eps, PrivacyRequirement q, SolverMargin tau) {
  return std::clamp(e + OptimalNoise(e, eps, q, tau), 0.0, kPi);
}

}  // namespace vrp
