#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vrprivacy/leakage.hpp"
#include "vrprivacy/sphere.hpp"

namespace vrp {

/// Settings for the simulated attacker. trials >= 1000 and
/// grid_resolution in (0, 0.1] radians.
struct OracleConfig {
  std::size_t trials = 100000;
  double grid_resolution = 0.05;
  std::uint64_t seed = 0x5eed;

  void Validate() const;
};

/// Fixed, deliberately off-axis prediction used by the oracle.
SpherePoint OracleReferencePrediction();

/// Simulates the leakage event directly.
///
/// Each trial places the actual viewpoint uniformly on the circle of radius e
/// around the reference prediction, lets the attacker pick its inferred
/// viewpoint from the uploaded error e + n using OptimalInferredViewpoint,
/// and counts a leak when the two are within eps. Trial t draws from
/// generators seeded by (seed, stream, t), so the result does not depend on
/// evaluation order. half_width is 4 binomial standard deviations.
LeakageEstimate EmpiricalConditionalLeakage(double e, double noise, Precision eps,
                                            const OracleConfig& cfg);

struct CandidateScore {
  SpherePoint point;
  double distance_to_prediction;
  double probability;
};

/// Fibonacci lattice with roughly `resolution` spacing (ceil(4 pi / r^2)
/// points).
std::vector<SpherePoint> FibonacciLattice(double resolution);

/// Leakage probability of every lattice candidate for an actual viewpoint on
/// the circle of radius e. The circle is sampled at cfg.trials bearings
/// spaced evenly after one random offset (randomized lattice rule), and the
/// same samples are shared by all candidates.
std::vector<CandidateScore> ScoreGridCandidates(double e, Precision eps, const OracleConfig& cfg);

struct GridAttackResult {
  SpherePoint best_point;
  double best_distance;  ///< spherical distance from the prediction
  double probability;
  std::size_t candidates;
};

/// Exhaustive attacker: the highest-scoring lattice candidate. Ties go to the
/// earliest lattice point. Requires eps < e < pi - eps.
GridAttackResult GridAttackerBest(double e, Precision eps, const OracleConfig& cfg);

}  // namespace vrp
