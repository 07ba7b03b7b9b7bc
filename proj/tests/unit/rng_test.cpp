#include "vrprivacy/rng.hpp"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

namespace vrp {
namespace {

TEST(SeededRngTest, SameSeedSameStream) {
  SeededRng a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(SeededRngTest, DifferentSeedsDiverge) {
  SeededRng a(1), b(2);
  int equal = 0;
  for (int i = 0; i < 100; ++i) equal += a() == b();
  EXPECT_EQ(equal, 0);
}

TEST(SeededRngTest, UniformStaysInUnitInterval) {
  SeededRng rng(3);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  EXPECT_LT(lo, 1e-3);
  EXPECT_GT(hi, 1.0 - 1e-3);
}

TEST(SeededRngTest, UnitFromBitsEndpoints) {
  EXPECT_EQ(UnitFromBits(0), 0.0);
  EXPECT_LT(UnitFromBits(~0ULL), 1.0);
}

TEST(SeededRngTest, LaplaceMoments) {
  SeededRng rng(9);
  const double b = 0.7;
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.Laplace(b);
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 2.0 * b * b, 0.03);
}

TEST(SeededRngTest, NormalMoments) {
  SeededRng rng(10);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.Normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(DeriveSeedTest, OrderMatters) {
  EXPECT_NE(DeriveSeed({1, 2}), DeriveSeed({2, 1}));
  EXPECT_EQ(DeriveSeed({1, 2, 3}), DeriveSeed({1, 2, 3}));
}

TEST(DeriveSeedTest, NoCollisionsOnSmallGrid) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 50; ++a) {
    for (std::uint64_t b = 0; b < 50; ++b) seen.insert(DeriveSeed({7, a, b}));
  }
  EXPECT_EQ(seen.size(), 2500u);
}

TEST(KeyOfTest, SignedZeroSharesAKey) {
  EXPECT_EQ(KeyOf(0.0), KeyOf(-0.0));
  EXPECT_NE(KeyOf(0.05), KeyOf(0.1));
}

}  // namespace
}  // namespace vrp
