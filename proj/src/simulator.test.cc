// Copyright 2026 The astar-mle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mle/simulator.h"

#include <cmath>

#include "gtest/gtest.h"
#include "mle/errors.h"
#include "mle/generators.h"
#include "test_util.h"

namespace mle {
namespace {

TEST(SampleShotTest, InvariantsHold) {
  Rng rng(1);
  const ErrorModel m = testing::random_small_model(rng, 14, 10);
  for (int t = 0; t < 1000; ++t) {
    const Shot s = sample_shot(m, rng);
    EXPECT_EQ(s.syndrome, syndrome_of(m, s.fired_errors));
    EXPECT_EQ(s.true_observables, observables_of(m, s.fired_errors));
  }
}

TEST(SampleShotTest, TinyProbabilityNeverFires) {
  const ErrorModel m = testing::make_model({{1e-12, {0}}}, 1);
  Rng rng(2);
  for (int t = 0; t < 1000; ++t) EXPECT_TRUE(sample_shot(m, rng).fired_errors.empty());
}

TEST(SampleShotTest, MarginalsWithinFiveSigma) {
  const ErrorModel m =
      testing::make_model({{0.5, {0}}, {0.3, {1}}, {0.05, {2}}, {0.01, {0, 1}}}, 3);
  Rng rng(3);
  const int n = 10000;
  std::vector<int> fired(m.num_channels(), 0);
  for (int t = 0; t < n; ++t) {
    for (ChannelId e : sample_shot(m, rng).fired_errors) ++fired[e];
  }
  for (ChannelId e = 0; e < m.num_channels(); ++e) {
    const double p = m.channel(e).probability;
    EXPECT_NEAR(fired[e], n * p, 5 * std::sqrt(n * p * (1 - p))) << e;
  }
}

TEST(PerRoundTest, FixedPoints) {
  for (size_t r = 1; r <= 10; ++r) {
    EXPECT_EQ(per_round_rate(0.0, r), 0.0);
    EXPECT_EQ(per_round_rate(0.5, r), 0.5);
  }
}

TEST(PerRoundTest, KnownValue) {
  const double expected = 0.5 * (1 - std::sqrt(0.62));
  EXPECT_NEAR(per_round_rate(0.19, 2), expected, 1e-15);
  EXPECT_NEAR(per_round_rate(0.19, 2), 0.1062996, 1e-7);
  EXPECT_NEAR(compose_rounds(per_round_rate(0.19, 2), 2), 0.19, 1e-12);
}

TEST(PerRoundTest, RoundsOneIsIdentity) {
  for (double r : {0.0, 0.01, 0.2, 0.49}) EXPECT_EQ(per_round_rate(r, 1), r);
}

TEST(PerRoundTest, DomainErrors) {
  EXPECT_THROW(per_round_rate(0.6, 2), DomainError);
  EXPECT_THROW(per_round_rate(-0.1, 2), DomainError);
  EXPECT_THROW(per_round_rate(0.1, 0), DomainError);
}

TEST(PerRoundTest, MonotoneAndInverse) {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const size_t r = 1 + rng.below(20);
    const double x = 0.5 * rng.uniform();
    EXPECT_NEAR(compose_rounds(per_round_rate(x, r), r), x, 1e-12);
    // The other direction loses digits once (1 - 2x)^r nears zero; check it
    // where 1 - 2 compose(x) keeps at least three significant decimals.
    if (1 - 2 * compose_rounds(x, r) >= 1e-3) {
      EXPECT_NEAR(per_round_rate(compose_rounds(x, r), r), x, 1e-12);
    }
    const double y = 0.5 * rng.uniform();
    if (x < y) EXPECT_LE(per_round_rate(x, r), per_round_rate(y, r));
  }
}

TEST(WilsonTest, ZeroSuccesses) {
  const auto [lo, hi] = wilson_interval(0, 100);
  EXPECT_EQ(lo, 0.0);
  // Closed form for k = 0: z^2 / (n + z^2).
  EXPECT_NEAR(hi, kZ90 * kZ90 / (100 + kZ90 * kZ90), 1e-15);
}

TEST(WilsonTest, AllSuccesses) {
  const auto [lo, hi] = wilson_interval(50, 50);
  EXPECT_EQ(hi, 1.0);
  EXPECT_NEAR(lo, 50 / (50 + kZ90 * kZ90), 1e-15);
}

TEST(WilsonTest, ContainsPointEstimate) {
  Rng rng(5);
  for (int t = 0; t < 500; ++t) {
    const uint64_t n = 1 + rng.below(10000);
    const uint64_t k = rng.below(n + 1);
    const auto [lo, hi] = wilson_interval(k, n);
    const double r = static_cast<double>(k) / n;
    EXPECT_LE(0.0, lo);
    EXPECT_LE(lo, r + 1e-15);
    EXPECT_LE(r, hi + 1e-15);
    EXPECT_LE(hi, 1.0);
  }
}

TEST(SummarizeTest, RoundsOneMatchesPerShot) {
  const ShotStats s = summarize(1000, 30, 2, 1);
  EXPECT_EQ(s.per_shot, 0.03);
  ASSERT_TRUE(s.per_round.has_value());
  EXPECT_EQ(*s.per_round, s.per_shot);
  EXPECT_EQ(s.ci90_per_round->first, s.ci90_per_shot.first);
  EXPECT_EQ(s.ci90_per_round->second, s.ci90_per_shot.second);
}

TEST(SummarizeTest, AboveHalfHasNoPerRound) {
  const ShotStats s = summarize(10, 8, 8, 3);
  EXPECT_FALSE(s.per_round.has_value());
  EXPECT_FALSE(s.ci90_per_round.has_value());
}

TEST(SummarizeTest, UpperEndpointClamped) {
  const ShotStats s = summarize(10, 5, 0, 2);
  ASSERT_TRUE(s.per_round.has_value());
  EXPECT_GT(s.ci90_per_shot.second, 0.5);
  EXPECT_EQ(s.ci90_per_round->second, 0.5);
}

TEST(RunExperimentTest, RepetitionCodeAnalyticRate) {
  // MLE on the d=3 repetition code is majority vote: a logical error needs
  // two or three flips.
  const double p = 0.1;
  const double analytic = 3 * p * p * (1 - p) + p * p * p;
  DecoderSpec spec;
  spec.kind = DecoderKind::kBruteForce;
  const ShotStats s = run_experiment(gen_repetition_code(3, p), {100000, 1, 2024, 1}, spec);
  EXPECT_TRUE(s.valid);
  EXPECT_LE(s.ci90_per_shot.first, analytic);
  EXPECT_GE(s.ci90_per_shot.second, analytic);
}

TEST(RunExperimentTest, ParallelMatchesSerial) {
  const ErrorModel m = canonicalize(gen_surface_code_capacity(3, 0.08));
  DecoderSpec spec;
  const ExperimentConfig serial{3000, 3, 9, 1};
  ExperimentConfig parallel = serial;
  parallel.threads = 4;
  const ShotStats a = run_experiment_serial(m, serial, spec);
  const ShotStats b = run_experiment(m, parallel, spec);
  EXPECT_EQ(a.errors, b.errors);
  EXPECT_EQ(a.low_confidence, b.low_confidence);
  EXPECT_EQ(a.nodes_expanded_total, b.nodes_expanded_total);
  EXPECT_EQ(a.per_round, b.per_round);
}

TEST(RunExperimentTest, LowConfidenceCountsAsError) {
  DecoderSpec spec;
  spec.search.pqlimit = 1;
  const ErrorModel m = gen_repetition_code(3, 0.4);
  const ShotStats s = run_experiment(m, {2000, 1, 1, 1}, spec);
  EXPECT_GT(s.low_confidence, 0);
  EXPECT_GE(s.errors, s.low_confidence);
}

TEST(RunExperimentTest, FailureMarksInvalid) {
  // 26 channels is beyond the brute-force limit, so the first shot throws.
  std::vector<testing::ChannelSpec> specs;
  for (DetectorId d = 0; d < 26; ++d) specs.push_back({0.1, {d}});
  DecoderSpec spec;
  spec.kind = DecoderKind::kBruteForce;
  const ShotStats s = run_experiment(testing::make_model(specs, 26), {10, 1, 1, 2}, spec);
  EXPECT_FALSE(s.valid);
  EXPECT_FALSE(s.failure.empty());
  EXPECT_EQ(s.shots, 0);
}

}  // namespace
}  // namespace mle
