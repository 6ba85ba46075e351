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

#ifndef MLE_BATCH_H_
#define MLE_BATCH_H_

#include <span>
#include <vector>

#include "mle/ensemble.h"
#include "mle/model.h"
#include "mle/search.h"

namespace mle {

enum class DecoderKind { kAStar, kEnsemble, kDijkstra, kBruteForce };

struct DecoderSpec {
  DecoderKind kind = DecoderKind::kAStar;
  SearchConfig search;      // kAStar
  EnsembleConfig ensemble;  // kEnsemble
};

// One syndrome through the selected decoder. Brute force results are
// reported as a DecodeOutcome with zeroed search stats.
DecodeOutcome decode_shot(const ErrorModel& model, const Syndrome& syndrome,
                          const DecoderSpec& spec);

// Reference kernel: shots decoded in order on the calling thread.
std::vector<DecodeOutcome> decode_batch_serial(const ErrorModel& model,
                                               std::span<const Syndrome> shots,
                                               const DecoderSpec& spec);

// OpenMP kernel: shots spread over `threads` workers. Output is identical
// to decode_batch_serial apart from wall times. If any shot throws, the
// exception from the lowest-indexed failing shot is rethrown.
std::vector<DecodeOutcome> decode_batch_parallel(const ErrorModel& model,
                                                 std::span<const Syndrome> shots,
                                                 const DecoderSpec& spec,
                                                 int threads);

}  // namespace mle

#endif  // MLE_BATCH_H_
