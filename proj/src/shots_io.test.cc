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

#include "mle/shots_io.h"

#include "gtest/gtest.h"

namespace mle {
namespace {

TEST(ParseShotsTest, Dets) {
  const auto shots = parse_shots("D0 D3\n\nD2\t D1\n", ShotFormat::kDets, 4);
  ASSERT_EQ(shots.size(), 3);
  EXPECT_EQ(shots[0].activated(), (std::vector<DetectorId>{0, 3}));
  EXPECT_TRUE(shots[1].empty());
  EXPECT_EQ(shots[2].activated(), (std::vector<DetectorId>{1, 2}));
}

TEST(ParseShotsTest, B01) {
  const auto shots = parse_shots("1001\r\n0000\n", ShotFormat::kB01, 4);
  ASSERT_EQ(shots.size(), 2);
  EXPECT_EQ(shots[0].activated(), (std::vector<DetectorId>{0, 3}));
  EXPECT_TRUE(shots[1].empty());
}

TEST(ParseShotsTest, NoTrailingNewline) {
  EXPECT_EQ(parse_shots("D1", ShotFormat::kDets, 2).size(), 1);
  EXPECT_EQ(parse_shots("", ShotFormat::kDets, 2).size(), 0);
}

TEST(ParseShotsTest, Errors) {
  EXPECT_THROW(parse_shots("D9\n", ShotFormat::kDets, 4), ShotFormatError);
  EXPECT_THROW(parse_shots("X1\n", ShotFormat::kDets, 4), ShotFormatError);
  EXPECT_THROW(parse_shots("D\n", ShotFormat::kDets, 4), ShotFormatError);
  EXPECT_THROW(parse_shots("101\n", ShotFormat::kB01, 4), ShotFormatError);
  EXPECT_THROW(parse_shots("10a1\n", ShotFormat::kB01, 4), ShotFormatError);
  try {
    parse_shots("D0\nD7\n", ShotFormat::kDets, 4);
  } catch (const ShotFormatError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parse_shot_format("csv"), std::invalid_argument);
}

TEST(FormatShotsTest, RoundTripBothFormats) {
  const std::vector<Syndrome> shots{Syndrome({0, 2}), Syndrome{}, Syndrome({4})};
  for (ShotFormat f : {ShotFormat::kDets, ShotFormat::kB01}) {
    EXPECT_EQ(parse_shots(format_shots(shots, f, 5), f, 5), shots);
  }
  EXPECT_EQ(format_shots(shots, ShotFormat::kB01, 5), "10100\n00000\n00001\n");
}

TEST(FormatPredictionTest, Lines) {
  DecodeOutcome out;
  out.predicted_observables = BitVec(3);
  out.predicted_observables.set(2);
  EXPECT_EQ(format_prediction(out), "001");
  out.low_confidence = true;
  EXPECT_EQ(format_prediction(out), "LOW_CONFIDENCE");
}

TEST(ObservableLinesTest, Parse) {
  const auto obs = parse_observable_lines("01\n10\n", 2);
  ASSERT_EQ(obs.size(), 2);
  EXPECT_TRUE(obs[0].get(1));
  EXPECT_TRUE(obs[1].get(0));
  EXPECT_THROW(parse_observable_lines("011\n", 2), ShotFormatError);
}

}  // namespace
}  // namespace mle
