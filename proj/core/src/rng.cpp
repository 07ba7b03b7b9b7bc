#include "vrprivacy/rng.hpp"

#include <bit>
#include <cmath>
#include <random>

namespace vrp {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveSeed(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x6a09e667f3bcc908ULL;
  for (std::uint64_t w : words) {
    h = SplitMix64(h ^ SplitMix64(w));
  }
  return h;
}

std::uint64_t KeyOf(double value) {
  // Canonicalize -0.0 so that q = 0 and q = -0 seed identically.
  if (value == 0.0) value = 0.0;
  return std::bit_cast<std::uint64_t>(value);
}

double UnitFromBits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

SeededRng::result_type SeededRng::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SeededRng::Uniform() { return UnitFromBits((*this)()); }

double SeededRng::Normal() { return std::normal_distribution<double>{}(*this); }

double SeededRng::Laplace(double b) {
  const double u = Uniform() - 0.5;
  const double mag = 1.0 - 2.0 * std::abs(u);
  if (mag <= 0.0) return 0.0;
  return -b * std::copysign(std::log(mag), u);
}

}  // namespace vrp
