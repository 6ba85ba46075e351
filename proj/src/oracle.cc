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

#include "mle/oracle.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>

#include "mle/errors.h"

namespace mle {

namespace {

std::vector<ChannelId> members(uint32_t mask) {
  std::vector<ChannelId> out;
  while (mask) {
    out.push_back(static_cast<ChannelId>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

double exact_cost(const ErrorModel& model, uint32_t mask) {
  double total = 0.0;
  for (ChannelId e : members(mask)) total += model.channel(e).weight;
  return total;
}

}  // namespace

BruteForceResult brute_force_mle(const ErrorModel& model, const Syndrome& syndrome) {
  const size_t n = model.num_channels();
  if (n > kBruteForceMaxChannels) {
    throw TooLarge("brute force supports at most " +
                   std::to_string(kBruteForceMaxChannels) + " channels, got " +
                   std::to_string(n));
  }
  const size_t k = model.num_detectors();
  const BitVec target = syndrome.to_bitvec(k);
  std::vector<BitVec> flips;
  for (const auto& ch : model.channels()) {
    BitVec b(k);
    for (DetectorId d : ch.detectors) b.flip(d);
    flips.push_back(std::move(b));
  }

  // Matching subsets that are still within tolerance of the best seen.
  std::vector<std::pair<uint32_t, double>> near;
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](uint32_t mask) {
    const double c = exact_cost(model, mask);
    if (c > best + kOptimumTolerance) return;
    if (c < best) {
      best = c;
      std::erase_if(near, [&](const auto& m) { return m.second > best + kOptimumTolerance; });
    }
    near.emplace_back(mask, c);
  };

  // Gray-code walk: step i toggles channel ctz(i).
  BitVec current(k);
  uint32_t mask = 0;
  if (current == target) consider(mask);
  const uint64_t total = uint64_t{1} << n;
  for (uint64_t i = 1; i < total; ++i) {
    const int bit = std::countr_zero(i);
    mask ^= uint32_t{1} << bit;
    current ^= flips[static_cast<size_t>(bit)];
    if (current == target) consider(mask);
  }
  if (near.empty()) throw Unsatisfiable("no error subset reproduces the syndrome");

  BruteForceResult result;
  result.cost = best;
  result.optima_count = near.size();
  bool first = true;
  for (const auto& [m, c] : near) {
    std::vector<ChannelId> set = members(m);
    if (first || set < result.best) {
      result.best = std::move(set);
      first = false;
    }
  }
  return result;
}

DecodeOutcome dijkstra_decode(const ErrorModel& model, const Syndrome& syndrome) {
  return detail::run_search(model, syndrome, SearchConfig{},
                            detail::HeuristicMode::kZero, nullptr);
}

}  // namespace mle
