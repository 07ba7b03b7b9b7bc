// Randomized property suites with hand-rolled generators. Every generator is
// seeded, so a failure reproduces from its case index.

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "vrprivacy/bpea.hpp"
#include "vrprivacy/streaming_sim.hpp"
#include "vrprivacy/trace.hpp"

namespace vrp {
namespace {

const Precision kEps(0.1 * kPi);
const double kE = 0.1 * kPi;

// Middle-range error in (eps, pi - eps), biased toward both edges now and then.
double GenMiddleError(SeededRng& rng) {
  const double u = rng.Uniform();
  if (u < 0.1) return kE + 1e-6 + 0.05 * rng.Uniform();
  if (u < 0.2) return kPi - kE - 1e-6 - 0.05 * rng.Uniform();
  return kE + (kPi - 2 * kE) * (0.001 + 0.998 * rng.Uniform());
}

TEST(NoisyLeakageProperty, NonIncreasingInNoiseMagnitude) {
  SeededRng rng(101);
  for (int c = 0; c < 1000; ++c) {
    const double e = GenMiddleError(rng);
    const double lo = std::max(kE - e, -e), hi = std::min(kPi - e - kE, kPi - e);
    double a = lo + (hi - lo) * rng.Uniform();
    double b = lo + (hi - lo) * rng.Uniform();
    if (std::abs(a) > std::abs(b)) std::swap(a, b);
    if (ClassifyNoise(e, a, kEps) != NoiseRegion::kMiddle ||
        ClassifyNoise(e, b, kEps) != NoiseRegion::kMiddle) {
      continue;
    }
    ASSERT_GE(ConditionalLeakageNoisy(e, a, kEps), ConditionalLeakageNoisy(e, b, kEps))
        << "case " << c << " e=" << e << " |a|=" << a << " |b|=" << b;
  }
}

TEST(OptimalNoiseProperty, MagnitudeNonIncreasingInRequirement) {
  SeededRng rng(202);
  for (int c = 0; c < 1000; ++c) {
    const double e = GenMiddleError(rng);
    double q1 = rng.Uniform(), q2 = rng.Uniform();
    if (q1 > q2) std::swap(q1, q2);
    if (c % 10 == 0) q1 = 0.0;
    const double n1 = OptimalNoise(e, kEps, PrivacyRequirement(q1));
    const double n2 = OptimalNoise(e, kEps, PrivacyRequirement(q2));
    ASSERT_GE(std::abs(n1), std::abs(n2)) << "case " << c << " e=" << e << " q=" << q1 << ","
                                          << q2;
  }
}

TEST(OptimalNoiseProperty, ZeroLeakageReachableForEveryError) {
  SeededRng rng(303);
  for (int c = 0; c < 1000; ++c) {
    const double e = kPi * rng.Uniform();
    const double n = OptimalNoise(e, kEps, PrivacyRequirement(0.0));
    ASSERT_EQ(ConditionalLeakageNoisy(e, n, kEps), 0.0) << "case " << c << " e=" << e;
  }
}

// Random session: synthetic walk, random horizon-2 predictor, random policy
// and budget.
struct SessionCase {
  SessionTrace trace;
  ObfuscationPolicy policy;
  SessionConfig cfg;
};

SessionCase GenSession(SeededRng& rng) {
  TraceSynthesisConfig synth;
  synth.gops = 3 + static_cast<std::size_t>(rng.Uniform() * 30);
  synth.concentration = 2.0 + 200.0 * rng.Uniform();
  SessionCase c{GenerateSyntheticTrace(0, 0, synth, rng), {}, {}};
  switch (static_cast<int>(rng.Uniform() * 4)) {
    case 0: c.policy = ObfuscationPolicy::None(); break;
    case 1: c.policy = ObfuscationPolicy::Bpea(rng.Uniform()); break;
    case 2: c.policy = ObfuscationPolicy::Gaussian(3.0 * rng.Uniform()); break;
    default: c.policy = ObfuscationPolicy::Laplace(3.0 * rng.Uniform()); break;
  }
  c.cfg.budget_mbit = rng.Uniform() < 0.2 ? 10.0 * rng.Uniform() : 200.0 * rng.Uniform();
  return c;
}

TEST(SessionProperty, BudgetConservedAndQoeBounded) {
  SeededRng rng(404);
  for (int c = 0; c < 1000; ++c) {
    const SessionCase s = GenSession(rng);
    SeededRng sim(static_cast<std::uint64_t>(c));
    const UploadStream up =
        s.policy.is_baseline()
            ? BaselineUploads(s.trace, s.policy.noise_scale(), 2, kEps, sim)
            : ErrorNoiseUploads(s.trace, s.policy, 2, kEps);
    for (const GopPlayback& g : StreamGops(s.trace.actual, up.predicted, up.uploaded, s.cfg)) {
      double used = 0.0;
      for (QualityLevel q : g.streamed.quality) used += BitrateMbps(q) * s.cfg.gop_seconds;
      ASSERT_LE(used, s.cfg.budget_mbit + 1e-9) << "case " << c;
      ASSERT_NEAR(used, g.streamed.used_mbit, 1e-9);
    }
    SeededRng again(static_cast<std::uint64_t>(c));
    const auto r = SimulateSession(s.trace, s.policy, s.cfg, kEps, again);
    ASSERT_GE(r.qoe.qoe, 1.0) << "case " << c;
    ASSERT_LE(r.qoe.qoe, 5.0) << "case " << c;
    ASSERT_GE(r.leakage.value, 0.0);
    ASSERT_LE(r.leakage.value, 1.0);
    if (r.qoe.qoe == 5.0) {
      ASSERT_EQ(r.qoe.stall_fraction, 0.0);
      ASSERT_EQ(r.qoe.mean_fov_quality, 1.0);
    }
  }
}

// With a perfect predictor every FoV tile sits in the pFoV, so inflating the
// uploaded error only moves budget away from what the viewer sees.
TEST(SessionProperty, QoeNonIncreasingInAddedErrorUnderPerfectPrediction) {
  SeededRng rng(505);
  for (int c = 0; c < 200; ++c) {
    TraceSynthesisConfig synth;
    synth.gops = 10;
    SessionTrace trace = GenerateSyntheticTrace(0, 0, synth, rng);
    SessionConfig cfg;
    cfg.budget_mbit = 30.0 + 100.0 * rng.Uniform();
    std::vector<double> base(trace.gop_count());
    for (double& e : base) e = 0.5 * kPi * rng.Uniform();
    double previous = 6.0;
    for (int k = 0; k <= 8; ++k) {
      std::vector<double> uploaded(base);
      for (double& e : uploaded) e = std::min(e + k * 0.125 * kPi, kPi);
      const double qoe = QoeScore(StreamGops(trace.actual, trace.actual, uploaded, cfg), cfg).qoe;
      ASSERT_LE(qoe, previous + 1e-12) << "case " << c << " step " << k;
      previous = qoe;
    }
  }
}

TEST(SessionProperty, DeterministicUnderFixedSeed) {
  SeededRng rng(606);
  for (int c = 0; c < 100; ++c) {
    const SessionCase s = GenSession(rng);
    SeededRng a(77), b(77);
    const auto x = SimulateSession(s.trace, s.policy, s.cfg, kEps, a);
    const auto y = SimulateSession(s.trace, s.policy, s.cfg, kEps, b);
    ASSERT_EQ(x.qoe.qoe, y.qoe.qoe);
    ASSERT_EQ(x.leakage.value, y.leakage.value);
  }
}

}  // namespace
}  // namespace vrp
