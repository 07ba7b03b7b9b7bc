#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace vrp {

/// SplitMix64 finalizer. Bijective 64-bit mixer used for seed derivation.
std::uint64_t SplitMix64(std::uint64_t x);

/// Derives a child seed from an ordered list of words. Order matters.
std::uint64_t DeriveSeed(std::initializer_list<std::uint64_t> words);

/// Maps a double to a stable 64-bit key (for seeds keyed by q or scale).
std::uint64_t KeyOf(double value);

/// Maps the top 53 bits of `bits` to a double in [0, 1).
double UnitFromBits(std::uint64_t bits);

/// Caller-owned pseudo random generator (SplitMix64 stream).
///
/// Satisfies UniformRandomBitGenerator so it can drive <random>
/// distributions. Construction is cheap, which lets Monte-Carlo code build
/// one generator per trial from DeriveSeed(seed, stream, trial) and stay
/// independent of evaluation order.
class SeededRng {
 public:
  using result_type = std::uint64_t;

  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform in [0, 1).
  double Uniform();
  /// Standard normal.
  double Normal();
  /// Zero-mean Laplace with scale b (inverse CDF).
  double Laplace(double b);

 private:
  std::uint64_t state_;
};

}  // namespace vrp
