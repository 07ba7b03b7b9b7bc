#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vrprivacy/rng.hpp"
#include "vrprivacy/sphere.hpp"

namespace vrp {

/// Shortest trace a session can stream: predictions run two GoPs ahead.
inline constexpr std::size_t kMinTraceGops = 3;

/// One user watching one video, one viewpoint per one-second GoP.
struct SessionTrace {
  int user_id = 0;
  int video_id = 0;
  std::vector<SpherePoint> actual;
  /// Externally supplied predictions, one per GoP. When absent the
  /// persistence predictor stands in.
  std::optional<std::vector<SpherePoint>> predicted;

  std::size_t gop_count() const { return actual.size(); }

  /// Throws std::invalid_argument on fewer than kMinTraceGops GoPs or a
  /// prediction list of the wrong length.
  void Validate() const;
};

struct TraceSynthesisConfig {
  std::size_t gops = 60;
  /// von Mises-Fisher concentration of the per-GoP head step. Infinity
  /// yields a stationary trace.
  double concentration = 37.0;
  /// Steps leaving |latitude| <= max_latitude are redrawn.
  double max_latitude = 75.0 / 180.0 * kPi;
};

/// Bounded random walk on the sphere: starts near the equator at a uniform
/// azimuth; each step moves by a vMF-distributed angle in a uniform direction.
SessionTrace GenerateSyntheticTrace(int user_id, int video_id, const TraceSynthesisConfig& cfg,
                                    SeededRng& rng);

/// Angle of a von Mises-Fisher draw on S^2 from its mean direction.
double SampleVmfAngle(double concentration, SeededRng& rng);

/// Prediction for GoP t is the viewpoint observed `horizon` GoPs earlier,
/// clamped to the first GoP. Horizon 0 reproduces the input.
std::vector<SpherePoint> PersistencePredict(std::span<const SpherePoint> viewpoints,
                                            std::size_t horizon);
std::vector<SpherePoint> PersistencePredict(const SessionTrace& trace, std::size_t horizon);

}  // namespace vrp
