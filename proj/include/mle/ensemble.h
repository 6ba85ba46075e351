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

#ifndef MLE_ENSEMBLE_H_
#define MLE_ENSEMBLE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "mle/errors.h"
#include "mle/model.h"
#include "mle/rng.h"
#include "mle/search.h"

namespace mle {

class MissingCoordinates : public InvalidParams {
 public:
  using InvalidParams::InvalidParams;
};

struct EnsembleConfig {
  // Attempt i runs with beam = i mod (max_beam + 1). When off, every
  // attempt uses base.beam.
  bool beam_climbing = false;
  size_t max_beam = 0;
  size_t num_orderings = 1;
  // beam and detector_order are overridden per attempt.
  SearchConfig base;
  uint64_t seed = 0;
};

// max_beam 15, 16 orderings, pqlimit 200,000, no-revisit on.
EnsembleConfig short_beam_preset();
// max_beam 20, 21 orderings, pqlimit 1,000,000, no-revisit on.
EnsembleConfig long_beam_preset();

// Orders detectors by <coord(d), z> with z ~ N(0, 1)^t, ties by index.
// Throws MissingCoordinates unless every detector has a coordinate vector
// of one common dimension t >= 1.
std::vector<DetectorId> gaussian_ordering(
    const std::vector<std::vector<double>>& coords, Rng& rng);

// Uniform random permutation (Fisher-Yates); fallback when coordinates are
// missing.
std::vector<DetectorId> random_ordering(size_t num_detectors, Rng& rng);

struct EnsembleAttempt {
  std::optional<size_t> beam;
  std::vector<DetectorId> detector_order;
};

// The (beam, ordering) pairs decode_ensemble runs, in attempt order. Fixed
// for a given (model, config).
std::vector<EnsembleAttempt> plan_attempts(const ErrorModel& model,
                                           const EnsembleConfig& config);

struct EnsembleResult {
  DecodeOutcome outcome;
  std::vector<DecodeOutcome> attempts;
  // Attempt that produced `outcome`; empty when all were low confidence.
  std::optional<size_t> chosen;
};

// Runs every planned attempt and keeps the cheapest non-low-confidence
// result (ties: fewer errors, then earlier attempt). Stats are summed.
EnsembleResult decode_ensemble_detailed(const ErrorModel& model,
                                        const Syndrome& syndrome,
                                        const EnsembleConfig& config);

DecodeOutcome decode_ensemble(const ErrorModel& model, const Syndrome& syndrome,
                              const EnsembleConfig& config);

}  // namespace mle

#endif  // MLE_ENSEMBLE_H_
