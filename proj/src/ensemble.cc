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

#include "mle/ensemble.h"

#include <algorithm>
#include <numeric>
#include <utility>

namespace mle {

EnsembleConfig short_beam_preset() {
  EnsembleConfig c;
  c.beam_climbing = true;
  c.max_beam = 15;
  c.num_orderings = 16;
  c.base.pqlimit = 200'000;
  c.base.no_revisit = true;
  return c;
}

EnsembleConfig long_beam_preset() {
  EnsembleConfig c;
  c.beam_climbing = true;
  c.max_beam = 20;
  c.num_orderings = 21;
  c.base.pqlimit = 1'000'000;
  c.base.no_revisit = true;
  return c;
}

std::vector<DetectorId> gaussian_ordering(
    const std::vector<std::vector<double>>& coords, Rng& rng) {
  if (coords.empty()) return {};
  const size_t t = coords[0].size();
  if (t == 0) throw MissingCoordinates("detector 0 has no coordinates");
  for (size_t d = 0; d < coords.size(); ++d) {
    if (coords[d].size() != t) {
      throw MissingCoordinates("detector " + std::to_string(d) +
                               " lacks a coordinate vector of dimension " +
                               std::to_string(t));
    }
  }
  std::vector<double> z(t);
  for (double& zi : z) zi = rng.normal();

  std::vector<std::pair<double, DetectorId>> keyed(coords.size());
  for (size_t d = 0; d < coords.size(); ++d) {
    keyed[d] = {std::inner_product(coords[d].begin(), coords[d].end(), z.begin(), 0.0),
                static_cast<DetectorId>(d)};
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<DetectorId> order(coords.size());
  for (size_t i = 0; i < keyed.size(); ++i) order[i] = keyed[i].second;
  return order;
}

std::vector<DetectorId> random_ordering(size_t num_detectors, Rng& rng) {
  std::vector<DetectorId> order(num_detectors);
  std::iota(order.begin(), order.end(), DetectorId{0});
  shuffle(order, rng);
  return order;
}

std::vector<EnsembleAttempt> plan_attempts(const ErrorModel& model,
                                           const EnsembleConfig& config) {
  if (config.num_orderings == 0) throw InvalidParams("num_orderings must be positive");
  Rng rng(config.seed);
  const bool use_coords = model.has_complete_coords();
  std::vector<EnsembleAttempt> attempts;
  for (size_t i = 0; i < config.num_orderings; ++i) {
    EnsembleAttempt a;
    a.beam = config.beam_climbing ? std::optional<size_t>(i % (config.max_beam + 1))
                                  : config.base.beam;
    a.detector_order = use_coords ? gaussian_ordering(model.detector_coords(), rng)
                                  : random_ordering(model.num_detectors(), rng);
    attempts.push_back(std::move(a));
  }
  return attempts;
}

EnsembleResult decode_ensemble_detailed(const ErrorModel& model,
                                        const Syndrome& syndrome,
                                        const EnsembleConfig& config) {
  EnsembleResult result;
  SearchStats total;
  const auto plan = plan_attempts(model, config);
  for (size_t i = 0; i < plan.size(); ++i) {
    SearchConfig sc = config.base;
    sc.beam = plan[i].beam;
    sc.detector_order = plan[i].detector_order;
    DecodeOutcome o = decode(model, syndrome, sc);
    total += o.stats;
    if (!o.low_confidence) {
      const auto* best = result.chosen ? &result.attempts[*result.chosen] : nullptr;
      if (!best || o.cost < best->cost ||
          (o.cost == best->cost && o.errors.size() < best->errors.size())) {
        result.chosen = i;
      }
    }
    result.attempts.push_back(std::move(o));
  }
  if (result.chosen) {
    result.outcome = result.attempts[*result.chosen];
  } else {
    result.outcome = result.attempts.back();
    result.outcome.low_confidence = true;
  }
  result.outcome.stats = total;
  return result;
}

DecodeOutcome decode_ensemble(const ErrorModel& model, const Syndrome& syndrome,
                              const EnsembleConfig& config) {
  return decode_ensemble_detailed(model, syndrome, config).outcome;
}

}  // namespace mle
