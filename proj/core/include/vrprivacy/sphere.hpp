#pragma once

#include <numbers>

#include "vrprivacy/rng.hpp"

namespace vrp {

inline constexpr double kPi = std::numbers::pi;

/// Point on the unit viewing sphere. Always unit-norm.
///
/// All angles in this library are radians; there is no degree API.
class SpherePoint {
 public:
  /// Normalizes (x, y, z). Throws std::invalid_argument for a zero or
  /// non-finite vector.
  SpherePoint(double x, double y, double z);

  /// Point at polar angle `polar` from +z and azimuth `azimuth` from +x.
  static SpherePoint FromAngles(double polar, double azimuth);

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }

  double Dot(const SpherePoint& other) const {
    return x_ * other.x_ + y_ * other.y_ + z_ * other.z_;
  }
  SpherePoint Antipode() const { return SpherePoint(-x_, -y_, -z_, Unchecked{}); }

  bool operator==(const SpherePoint&) const = default;

 private:
  struct Unchecked {};
  SpherePoint(double x, double y, double z, Unchecked) : x_(x), y_(y), z_(z) {}

  double x_;
  double y_;
  double z_;
};

/// Great-circle distance in [0, pi]. Uses atan2(|a x b|, a . b), which stays
/// accurate near 0 and pi where acos loses precision.
double SphericalDistance(const SpherePoint& a, const SpherePoint& b);

/// Point reached from `origin` by travelling `distance` along the great
/// circle leaving at `bearing`.
///
/// Bearing 0 points toward the projection of the reference axis +z onto the
/// tangent plane at `origin`, and bearings increase toward origin x north.
/// When `origin` lies within 1e-9 of +z or -z the reference axis falls back
/// to +x. Requires distance in [0, pi].
SpherePoint PointAtDistance(const SpherePoint& origin, double distance, double bearing);

/// Point at spherical distance `radius` from `center` with a bearing drawn
/// uniformly from [0, 2 pi).
SpherePoint SampleOnCircle(const SpherePoint& center, double radius, SeededRng& rng);

/// Circumference 2 pi sin(e) of the circle of points at distance e.
double CircleCircumference(double e);

}  // namespace vrp
