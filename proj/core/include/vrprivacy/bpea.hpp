#pragma once

#include "vrprivacy/leakage.hpp"

namespace vrp {

/// Per-user cap q on the viewpoint-leakage probability. q = 0 is the
/// strictest requirement, q = 1 means no requirement.
class PrivacyRequirement {
 public:
  explicit PrivacyRequirement(double q);
  double value() const { return q_; }

 private:
  double q_;
};

/// Margin that keeps boundary noise values inside the open middle interval.
class SolverMargin {
 public:
  static constexpr double kDefault = 1e-4;
  explicit SolverMargin(double tau = kDefault);
  double value() const { return tau_; }

 private:
  double tau_;
};

/// Which of the three noise regions a (e, n) pair falls into. The attacker
/// reads e + n and picks its inferred viewpoint accordingly.
enum class NoiseRegion {
  kLow,     ///< n in [-e, eps - e]: attacker picks the prediction
  kMiddle,  ///< n in (eps - e, pi - e - eps): attacker picks a circle point
  kHigh,    ///< n in [pi - e - eps, pi - e]: attacker picks the antipode
};

NoiseRegion ClassifyNoise(double e, double noise, Precision eps);

/// Half-arc of the attacker's cap intersected with the true error circle:
/// arccos(cos eps / cos(min(|n|, eps))). Lies in [0, eps]; 0 once |n| >= eps.
double EpsilonTilde(double noise, Precision eps);

/// Leakage probability when the uploaded error is e + n and the attacker
/// takes it at face value. Constant 0/1 outside the middle region (see
/// ClassifyNoise); inside it, min(EpsilonTilde(n) / (pi sin e), 1).
/// Throws std::invalid_argument if n lies outside [-e, pi - e].
double ConditionalLeakageNoisy(double e, double noise, Precision eps);

/// Noise magnitude at which the middle-region leakage equals q:
/// arccos(cos eps / cos(q pi sin e)). Result in [0, eps].
/// Throws std::domain_error unless q pi sin e <= eps.
double NoiseMagnitudeForLeakage(double e, Precision eps, PrivacyRequirement q);

/// Deterministic minimum-|n| noise meeting ConditionalLeakageNoisy <= q.
///
/// The three error regimes are solved separately:
///   e <= eps          smallest positive n leaving the "prediction" region
///                     (eps - e + tau) if that already meets q, otherwise the
///                     middle-region magnitude, otherwise pi - e - eps;
///   eps < e < pi-eps  n = 0 if unperturbed leakage meets q, otherwise the
///                     smallest of |eps - e|, pi - e - eps and the middle
///                     magnitude (positive sign preferred on a tie);
///   e >= pi - eps     mirror image of the first regime with negative n.
/// q = 1 returns 0. The result keeps e + n inside [0, pi].
double OptimalNoise(double e, Precision eps, PrivacyRequirement q,
                    SolverMargin tau = SolverMargin{});

/// Uploaded error e + OptimalNoise(e, ...), clamped into [0, pi].
double ObfuscateError(double e, Precision eps, PrivacyRequirement q,
                      SolverMargin tau = SolverMargin{});

}  // namespace vrp
