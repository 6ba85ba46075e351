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

#include "mle/batch.h"

#include <exception>
#include <omp.h>

#include "mle/oracle.h"

namespace mle {

DecodeOutcome decode_shot(const ErrorModel& model, const Syndrome& syndrome,
                          const DecoderSpec& spec) {
  switch (spec.kind) {
    case DecoderKind::kAStar:
      return decode(model, syndrome, spec.search);
    case DecoderKind::kEnsemble:
      return decode_ensemble(model, syndrome, spec.ensemble);
    case DecoderKind::kDijkstra:
      return dijkstra_decode(model, syndrome);
    case DecoderKind::kBruteForce: {
      BruteForceResult bf = brute_force_mle(model, syndrome);
      DecodeOutcome out;
      out.predicted_observables = observables_of(model, bf.best);
      out.errors = std::move(bf.best);
      out.cost = bf.cost;
      return out;
    }
  }
  return {};
}

std::vector<DecodeOutcome> decode_batch_serial(const ErrorModel& model,
                                               std::span<const Syndrome> shots,
                                               const DecoderSpec& spec) {
  std::vector<DecodeOutcome> out;
  out.reserve(shots.size());
  for (const Syndrome& s : shots) out.push_back(decode_shot(model, s, spec));
  return out;
}

std::vector<DecodeOutcome> decode_batch_parallel(const ErrorModel& model,
                                                 std::span<const Syndrome> shots,
                                                 const DecoderSpec& spec,
                                                 int threads) {
  const auto n = static_cast<int64_t>(shots.size());
  std::vector<DecodeOutcome> out(shots.size());
  std::vector<std::exception_ptr> failures(shots.size());

  // Search cost varies wildly between shots, hence dynamic scheduling.
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads > 0 ? threads : 1)
  for (int64_t i = 0; i < n; ++i) {
    try {
      out[i] = decode_shot(model, shots[i], spec);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return out;
}

}  // namespace mle
