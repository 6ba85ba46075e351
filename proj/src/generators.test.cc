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

#include "mle/generators.h"

#include <set>

#include "gtest/gtest.h"
#include "mle/errors.h"
#include "mle/oracle.h"
#include "mle/search.h"
#include "test_util.h"

namespace mle {
namespace {

TEST(RepetitionCodeTest, DistanceThree) {
  const ErrorModel m = gen_repetition_code(3, 0.1);
  ASSERT_EQ(m.num_channels(), 3);
  EXPECT_EQ(m.num_detectors(), 2);
  EXPECT_EQ(m.num_observables(), 1);
  EXPECT_EQ(m.channel(0).detectors, std::vector<DetectorId>{0});
  EXPECT_TRUE(m.channel(0).observables.get(0));
  EXPECT_EQ(m.channel(1).detectors, (std::vector<DetectorId>{0, 1}));
  EXPECT_FALSE(m.channel(1).observables.get(0));
  EXPECT_EQ(m.channel(2).detectors, std::vector<DetectorId>{1});
  EXPECT_TRUE(m.is_canonical());
}

TEST(RepetitionCodeTest, SingleDetectorDecodesToLogicalFlip) {
  const ErrorModel m = gen_repetition_code(3, 0.1);
  const auto truth = testing::naive_mle(m, {0});
  ASSERT_EQ(truth.optima, 1);
  EXPECT_EQ(truth.best, std::vector<ChannelId>{0});
  const DecodeOutcome out = decode(m, Syndrome({0}));
  EXPECT_EQ(out.errors, std::vector<ChannelId>{0});
  EXPECT_TRUE(out.predicted_observables.get(0));
  EXPECT_FALSE(decode(m, Syndrome{}).predicted_observables.get(0));
}

TEST(RepetitionCodeTest, InvalidParams) {
  EXPECT_THROW(gen_repetition_code(4, 0.1), InvalidParams);
  EXPECT_THROW(gen_repetition_code(1, 0.1), InvalidParams);
  EXPECT_THROW(gen_repetition_code(3, 0.0), InvalidParams);
  EXPECT_THROW(gen_repetition_code(3, 0.6), InvalidParams);
}

TEST(SurfaceCodeTest, Counts) {
  const ErrorModel m3 = gen_surface_code_capacity(3, 0.1);
  EXPECT_EQ(m3.num_channels(), 9);
  EXPECT_EQ(m3.num_detectors(), 4);
  EXPECT_TRUE(m3.has_complete_coords());
  const ErrorModel m5 = gen_surface_code_capacity(5, 0.1);
  EXPECT_EQ(m5.num_channels(), 25);
  EXPECT_EQ(m5.num_detectors(), 12);
}

TEST(SurfaceCodeTest, EveryQubitTouchesOneOrTwoDetectors) {
  const ErrorModel m = gen_surface_code_capacity(5, 0.1);
  for (const auto& ch : m.channels()) {
    EXPECT_GE(ch.detectors.size(), 1);
    EXPECT_LE(ch.detectors.size(), 2);
  }
  // The logical X chain (a full column) has trivial syndrome and flips L0.
  std::vector<ChannelId> column;
  for (ChannelId r = 0; r < 5; ++r) column.push_back(r * 5);
  EXPECT_TRUE(syndrome_of(m, column).empty());
  EXPECT_TRUE(observables_of(m, column).get(0));
}

TEST(SurfaceCodeTest, DistanceIsMinimumLogical) {
  // No nonempty set of fewer than d channels has trivial syndrome and flips
  // L0 (brute force over the canonical d=3 model).
  const ErrorModel m = canonicalize(gen_surface_code_capacity(3, 0.1));
  size_t min_weight = 100;
  for (uint32_t mask = 1; mask < (1u << m.num_channels()); ++mask) {
    std::vector<ChannelId> f;
    for (ChannelId e = 0; e < m.num_channels(); ++e) {
      if (mask >> e & 1) f.push_back(e);
    }
    if (syndrome_of(m, f).empty() && observables_of(m, f).get(0)) {
      min_weight = std::min(min_weight, f.size());
    }
  }
  EXPECT_EQ(min_weight, 3);
}

TEST(SurfaceCodeTest, BoundaryChannelDecodesToSingleChannel) {
  const ErrorModel m = canonicalize(gen_surface_code_capacity(3, 0.1));
  for (ChannelId e = 0; e < m.num_channels(); ++e) {
    if (m.channel(e).detectors.size() != 1) continue;
    const Syndrome s(m.channel(e).detectors);
    const DecodeOutcome out = decode(m, s);
    EXPECT_EQ(out.errors.size(), 1);
    EXPECT_NEAR(out.cost, m.channel(e).weight, 1e-12);
    EXPECT_NEAR(brute_force_mle(m, s).cost, out.cost, 1e-12);
  }
  EXPECT_TRUE(decode(m, Syndrome{}).errors.empty());
}

TEST(SurfaceCodeTest, InvalidParams) {
  EXPECT_THROW(gen_surface_code_capacity(2, 0.1), InvalidParams);
  EXPECT_THROW(gen_surface_code_capacity(3, 0.7), InvalidParams);
}

TEST(RandomLdpcTest, EmptyForZeroErrors) {
  Rng rng(1);
  const ErrorModel m = gen_random_ldpc({0, 5, 3, 0.01, 0.4}, rng);
  EXPECT_EQ(m.num_channels(), 0);
}

TEST(RandomLdpcTest, InvariantsForManySeeds) {
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    const RandomLdpcParams params{14, 10, 4, 0.01, 0.4};
    const ErrorModel m = gen_random_ldpc(params, rng);
    ASSERT_TRUE(m.is_canonical());
    EXPECT_LE(m.num_channels(), 14);
    EXPECT_EQ(m.num_detectors(), 10);
    for (const auto& ch : m.channels()) {
      EXPECT_GE(ch.detectors.size(), 1);
      EXPECT_LE(ch.detectors.size(), 4);
    }
    bool any_obs = false;
    for (const auto& ch : m.channels()) any_obs |= ch.observables.any();
    EXPECT_TRUE(any_obs);
  }
}

TEST(RandomLdpcTest, InvalidParams) {
  Rng rng(1);
  EXPECT_THROW(gen_random_ldpc({5, 0, 3, 0.01, 0.4}, rng), InvalidParams);
  EXPECT_THROW(gen_random_ldpc({5, 4, 0, 0.01, 0.4}, rng), InvalidParams);
  EXPECT_THROW(gen_random_ldpc({5, 4, 3, 0.3, 0.2}, rng), InvalidParams);
  EXPECT_THROW(gen_random_ldpc({5, 4, 3, 0.0, 0.2}, rng), InvalidParams);
  EXPECT_THROW(gen_random_ldpc({5, 4, 3, 0.1, 0.6}, rng), InvalidParams);
}

TEST(RandomLdpcTest, SeedReproducible) {
  Rng a(7), b(7);
  EXPECT_EQ(gen_random_ldpc({}, a), gen_random_ldpc({}, b));
}

TEST(RandomLdpcTest, OracleAgreement) {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const ErrorModel m = gen_random_ldpc({12, 8, 3, 0.01, 0.4}, rng);
    const Syndrome s = testing::random_syndrome(m, rng);
    const auto truth = testing::naive_mle(m, s.activated());
    if (!truth.found()) continue;
    EXPECT_NEAR(decode(m, s).cost, truth.cost, 1e-9);
  }
}

}  // namespace
}  // namespace mle
