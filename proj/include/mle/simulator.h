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

#ifndef MLE_SIMULATOR_H_
#define MLE_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mle/batch.h"
#include "mle/bitvec.h"
#include "mle/model.h"
#include "mle/rng.h"

namespace mle {

struct Shot {
  std::vector<ChannelId> fired_errors;
  Syndrome syndrome;
  BitVec true_observables;
};

// Each channel fires independently with its probability.
Shot sample_shot(const ErrorModel& model, Rng& rng);

// 1/2 (1 - (1 - 2R)^(1/r)). Throws DomainError unless 0 <= R <= 1/2 and r >= 1.
double per_round_rate(double per_shot, size_t rounds);
// Inverse of per_round_rate: 1/2 (1 - (1 - 2x)^r).
double compose_rounds(double per_round, size_t rounds);

// Two-sided 90% critical value of the standard normal.
inline constexpr double kZ90 = 1.6448536269514722;

// Wilson score interval for `successes` out of `trials` (trials >= 1).
std::pair<double, double> wilson_interval(uint64_t successes, uint64_t trials,
                                          double z = kZ90);

struct ShotStats {
  uint64_t shots = 0;
  // Shots whose prediction missed any observable bit, plus low-confidence
  // shots.
  uint64_t errors = 0;
  uint64_t low_confidence = 0;
  size_t rounds = 1;
  double per_shot = 0.0;
  std::pair<double, double> ci90_per_shot{0.0, 0.0};
  // Absent when per_shot > 1/2; the per-round map is undefined there.
  std::optional<double> per_round;
  std::optional<std::pair<double, double>> ci90_per_round;
  uint64_t nodes_expanded_total = 0;
  double wall_time_us_total = 0.0;
  // False when a decode threw; counts then cover the shots before it.
  bool valid = true;
  std::string failure;
};

// Rates and intervals from raw counts. The upper CI endpoint is clamped to
// 1/2 before the per-round map.
ShotStats summarize(uint64_t shots, uint64_t errors, uint64_t low_confidence,
                    size_t rounds);

struct ExperimentConfig {
  uint64_t num_shots = 1;
  size_t rounds = 1;
  uint64_t seed = 0;
  int threads = 1;
};

// Shot i is sampled from Rng::for_stream(seed, i), so results do not depend
// on the thread count.
ShotStats run_experiment(const ErrorModel& model, const ExperimentConfig& config,
                         const DecoderSpec& decoder);

// Single-threaded reference for run_experiment.
ShotStats run_experiment_serial(const ErrorModel& model,
                                const ExperimentConfig& config,
                                const DecoderSpec& decoder);

}  // namespace mle

#endif  // MLE_SIMULATOR_H_
