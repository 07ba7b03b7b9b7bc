#include "vrprivacy/leakage.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

namespace vrp {
namespace {

const Precision kEps(0.1 * kPi);

TEST(PrecisionTest, RejectsOutOfRange) {
  EXPECT_THROW(Precision(0.0), std::invalid_argument);
  EXPECT_THROW(Precision(0.5 * kPi), std::invalid_argument);
  EXPECT_THROW(Precision(-0.1), std::invalid_argument);
  EXPECT_NO_THROW(Precision(0.49 * kPi));
}

TEST(ConditionalLeakageTest, Examples) {
  EXPECT_EQ(ConditionalLeakage(0.05 * kPi, kEps), 1.0);
  EXPECT_NEAR(ConditionalLeakage(0.5 * kPi, kEps), 0.1, 1e-15);
  // mpmath, 40 digits.
  EXPECT_NEAR(ConditionalLeakage(0.35, kEps), 0.2916320776212365125, 1e-14);
}

TEST(ConditionalLeakageTest, BoundariesBelongToTheOneBranch) {
  EXPECT_EQ(ConditionalLeakage(kEps.value(), kEps), 1.0);
  EXPECT_EQ(ConditionalLeakage(kPi - kEps.value(), kEps), 1.0);
  EXPECT_EQ(ConditionalLeakage(0.0, kEps), 1.0);
  EXPECT_EQ(ConditionalLeakage(kPi, kEps), 1.0);
  EXPECT_LT(ConditionalLeakage(std::nextafter(kEps.value(), 1.0), kEps), 1.0);
}

TEST(ConditionalLeakageTest, RejectsErrorOutsideRange) {
  EXPECT_THROW(ConditionalLeakage(-1e-3, kEps), std::invalid_argument);
  EXPECT_THROW(ConditionalLeakage(kPi + 1e-3, kEps), std::invalid_argument);
  EXPECT_THROW(ConditionalLeakage(std::nan(""), kEps), std::invalid_argument);
}

TEST(ConditionalLeakageProperty, FloorSymmetryAndUniqueMinimum) {
  for (double eps_value : {0.05 * kPi, 0.1 * kPi, 0.25 * kPi, 0.45 * kPi}) {
    const Precision eps(eps_value);
    const double floor = eps_value / kPi;
    for (int i = 0; i <= 4000; ++i) {
      const double e = kPi * i / 4000.0;
      const double f = ConditionalLeakage(e, eps);
      ASSERT_GE(f, floor - 1e-15);
      ASSERT_NEAR(f, ConditionalLeakage(kPi - e, eps), 1e-12);
      if (i != 2000) ASSERT_GT(f, floor) << "e = " << e;
    }
    EXPECT_NEAR(ConditionalLeakage(kPi / 2, eps), floor, 1e-15);
  }
}

TEST(OptimalInferredViewpointTest, ThreeCases) {
  SeededRng rng(4);
  const SpherePoint p(0.3, -0.5, 0.81);
  EXPECT_EQ(OptimalInferredViewpoint(p, 0.05 * kPi, kEps, rng), p);
  EXPECT_EQ(OptimalInferredViewpoint(p, 0.95 * kPi, kEps, rng), p.Antipode());
  for (int i = 0; i < 100; ++i) {
    const SpherePoint v = OptimalInferredViewpoint(p, 0.5 * kPi, kEps, rng);
    ASSERT_NEAR(SphericalDistance(p, v), 0.5 * kPi, 1e-9);
  }
}

TEST(LeakageSampleMeanTest, Examples) {
  const std::vector<double> half(10, 0.5 * kPi);
  EXPECT_NEAR(LeakageSampleMean(half, kEps).value, 0.1, 1e-15);
  const std::vector<double> small = {0.0, 0.01, 0.1 * kPi};
  EXPECT_EQ(LeakageSampleMean(small, kEps).value, 1.0);
  const std::vector<double> mixed = {0.05 * kPi, 0.5 * kPi};
  const LeakageEstimate est = LeakageSampleMean(mixed, kEps);
  EXPECT_NEAR(est.value, 0.55, 1e-15);
  EXPECT_EQ(est.method, EstimateMethod::kSampleMean);
  EXPECT_THROW(LeakageSampleMean(std::vector<double>{}, kEps), std::invalid_argument);
}

TEST(LeakageSampleMeanProperty, EqualsMeanOfPerSampleValues) {
  SeededRng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> errors(1 + trial % 37);
    long double sum = 0.0L;
    for (double& e : errors) {
      e = kPi * rng.Uniform();
      sum += ConditionalLeakage(e, kEps);
    }
    ASSERT_NEAR(LeakageSampleMean(errors, kEps).value,
                static_cast<double>(sum / errors.size()), 1e-15);
  }
}

TEST(OptimalErrorDistributionTest, Examples) {
  const auto a = OptimalErrorDistribution(kEps);
  EXPECT_DOUBLE_EQ(a.error_location, 0.5 * kPi);
  EXPECT_NEAR(a.min_leakage, 0.1, 1e-15);
  const auto b = OptimalErrorDistribution(Precision(0.25 * kPi));
  EXPECT_NEAR(b.min_leakage, 0.25, 1e-15);
  EXPECT_LT(OptimalErrorDistribution(Precision(1e-9)).min_leakage, 1e-9);
}

TEST(MinLeakageGridCheckTest, Examples) {
  // mpmath: 0.1 / sin(4999 pi / 9999).
  EXPECT_NEAR(MinLeakageGridCheck(kEps, 10000), 0.1000000012339473400, 1e-15);
  EXPECT_NEAR(MinLeakageGridCheck(Precision(0.3 * kPi), 10000), 0.3, 1e-6);
  EXPECT_EQ(MinLeakageGridCheck(kEps, 2), 1.0);
  EXPECT_THROW(MinLeakageGridCheck(kEps, 1), std::invalid_argument);
}

TEST(MinLeakageGridCheckProperty, MonotoneOnNestedGrids) {
  // Grids with 2^k m + 1 points nest; the offset-free ones (m = 1) contain pi/2.
  for (std::size_t m : {1u, 3u, 7u}) {
    double previous = 2.0;
    for (std::size_t k = 0; k < 12; ++k) {
      const std::size_t bins = (m << k) + 1;
      if (bins < 2) continue;
      const double value = MinLeakageGridCheck(kEps, bins);
      ASSERT_LE(value, previous) << "bins " << bins;
      ASSERT_GE(value, 0.1 - 1e-15);
      previous = value;
    }
    EXPECT_NEAR(previous, 0.1, 1e-6);
  }
}

}  // namespace
}  // namespace vrp
