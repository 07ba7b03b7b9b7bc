#include "vrprivacy/sphere.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vrp {
namespace {

constexpr double kPoleTolerance = 1e-9;

void RequireDistance(double d, const char* what) {
  if (!(d >= 0.0 && d <= kPi)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, pi], got " +
                                std::to_string(d));
  }
}

}  // namespace

SpherePoint::SpherePoint(double x, double y, double z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (!std::isfinite(norm) || norm == 0.0) {
    throw std::invalid_argument("SpherePoint requires a finite non-zero vector");
  }
  x_ = x / norm;
  y_ = y / norm;
  z_ = z / norm;
}

SpherePoint SpherePoint::FromAngles(double polar, double azimuth) {
  const double s = std::sin(polar);
  return SpherePoint(s * std::cos(azimuth), s * std::sin(azimuth), std::cos(polar));
}

double SphericalDistance(const SpherePoint& a, const SpherePoint& b) {
  const double cx = a.y() * b.z() - a.z() * b.y();
  const double cy = a.z() * b.x() - a.x() * b.z();
  const double cz = a.x() * b.y() - a.y() * b.x();
  const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
  return std::atan2(cross, a.Dot(b));
}

SpherePoint PointAtDistance(const SpherePoint& origin, double distance, double bearing) {
  RequireDistance(distance, "distance");
  if (distance == 0.0) return origin;
  if (distance == kPi) return origin.Antipode();

  // Reference axis for bearing 0; +x near the poles.
  double rx = 0.0, ry = 0.0, rz = 1.0;
  if (1.0 - std::abs(origin.z()) < kPoleTolerance) {
    rx = 1.0;
    rz = 0.0;
  }
  const double along = rx * origin.x() + ry * origin.y() + rz * origin.z();
  double nx = rx - along * origin.x();
  double ny = ry - along * origin.y();
  double nz = rz - along * origin.z();
  const double nn = std::sqrt(nx * nx + ny * ny + nz * nz);
  nx /= nn;
  ny /= nn;
  nz /= nn;
  // east = origin x north
  const double ex = origin.y() * nz - origin.z() * ny;
  const double ey = origin.z() * nx - origin.x() * nz;
  const double ez = origin.x() * ny - origin.y() * nx;

  const double c = std::cos(bearing);
  const double s = std::sin(bearing);
  const double tx = c * nx + s * ex;
  const double ty = c * ny + s * ey;
  const double tz = c * nz + s * ez;

  const double cd = std::cos(distance);
  const double sd = std::sin(distance);
  return SpherePoint(cd * origin.x() + sd * tx, cd * origin.y() + sd * ty,
                     cd * origin.z() + sd * tz);
}

SpherePoint SampleOnCircle(const SpherePoint& center, double radius, SeededRng& rng) {
  return PointAtDistance(center, radius, 2.0 * kPi * rng.Uniform());
}

double CircleCircumference(double e) {
  RequireDistance(e, "e");
  return 2.0 * kPi * std::sin(e);
}

}  // namespace vrp
