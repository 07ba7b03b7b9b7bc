#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "vrprivacy/rng.hpp"
#include "vrprivacy/sphere.hpp"

namespace vrp {

/// Attacker precision: leakage happens when the inferred viewpoint is within
/// epsilon of the actual one. Restricted to (0, pi/2); at or above pi/2 every
/// error leaks with probability one and the analysis is vacuous.
class Precision {
 public:
  explicit Precision(double epsilon);
  double value() const { return epsilon_; }

 private:
  double epsilon_;
};

/// Default attacker precision, 0.1 pi.
inline constexpr double kDefaultEpsilon = 0.1 * kPi;

enum class EstimateMethod { kAnalytic, kSampleMean, kMonteCarlo };

const char* ToString(EstimateMethod method);

/// Viewpoint-leakage probability together with how it was obtained.
/// `trials` and `half_width` are set only for Monte-Carlo estimates.
struct LeakageEstimate {
  double value = 0.0;
  EstimateMethod method = EstimateMethod::kAnalytic;
  std::optional<std::size_t> trials;
  std::optional<double> half_width;
};

/// Worst-case conditional leakage Pr(A | P, e) for an attacker that sees the
/// true prediction error e:
///   1                        if e <= eps or e >= pi - eps
///   min(eps / (pi sin e), 1) otherwise.
/// The boundaries e = eps and e = pi - eps belong to the value-1 branch.
double ConditionalLeakage(double e, Precision eps);

/// The attacker's best guess given the uploaded prediction and error:
/// the prediction itself when the reported error is at most eps, its antipode
/// when it is at least pi - eps, and otherwise a uniformly random point on the
/// circle of radius `reported_error` around the prediction.
SpherePoint OptimalInferredViewpoint(const SpherePoint& predicted, double reported_error,
                                     Precision eps, SeededRng& rng);

/// Mean of ConditionalLeakage over `errors`, accumulated sequentially in
/// long double and rounded once. Throws on an empty list.
LeakageEstimate LeakageSampleMean(std::span<const double> errors, Precision eps);

/// Minimizer of the total leakage over all error distributions: a point mass.
struct ErrorDistributionOptimum {
  double error_location;  ///< where the optimal point mass sits (pi/2)
  double min_leakage;     ///< leakage achieved there (eps / pi)
};

ErrorDistributionOptimum OptimalErrorDistribution(Precision eps);

/// Numeric check of the optimum above: minimizes sum_i f_i Pr(A | e_i) over
/// discrete distributions f on the uniform grid e_i = i pi / (bins - 1).
/// The objective is linear in f, so the optimum is the vertex at the best
/// grid point. Requires bins >= 2.
double MinLeakageGridCheck(Precision eps, std::size_t bins);

}  // namespace vrp
