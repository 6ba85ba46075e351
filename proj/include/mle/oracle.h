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

#ifndef MLE_ORACLE_H_
#define MLE_ORACLE_H_

#include <cstddef>
#include <vector>

#include "mle/model.h"
#include "mle/search.h"

namespace mle {

// Ground-truth decoders for testing the A* search.

struct BruteForceResult {
  double cost = 0.0;
  // Lexicographically smallest optimal channel set, increasing.
  std::vector<ChannelId> best;
  // Subsets within kOptimumTolerance of the optimal cost.
  size_t optima_count = 0;
};

inline constexpr double kOptimumTolerance = 1e-9;
inline constexpr size_t kBruteForceMaxChannels = 25;

// Enumerates all 2^N subsets. Throws TooLarge above kBruteForceMaxChannels
// channels and Unsatisfiable when no subset reproduces the syndrome.
BruteForceResult brute_force_mle(const ErrorModel& model, const Syndrome& syndrome);

// Uniform-cost search over the same pruned tree as decode(): zero
// heuristic, no penalty, no cutoffs.
DecodeOutcome dijkstra_decode(const ErrorModel& model, const Syndrome& syndrome);

}  // namespace mle

#endif  // MLE_ORACLE_H_
