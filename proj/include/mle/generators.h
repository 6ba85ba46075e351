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

#ifndef MLE_GENERATORS_H_
#define MLE_GENERATORS_H_

#include <cstddef>

#include "mle/model.h"
#include "mle/rng.h"

namespace mle {

// Small code-capacity models for tests and benchmarks.

// Bit-flip repetition code (canonical): d channels, d-1 adjacent-pair detectors;
// channel i flips detectors {i-1, i} that exist, channel 0 also flips L0.
// Requires odd d >= 3 and p in (0, 1/2].
ErrorModel gen_repetition_code(size_t distance, double p);

// Rotated surface code under independent X noise. One channel per data
// qubit (row-major), one detector per Z plaquette with (row, col) corner
// coordinates, L0 = parity of X errors along the top row. Requires odd
// d >= 3 and p in (0, 1/2]. Pairs of top and bottom boundary qubits share a
// signature, so canonicalize before decoding.
ErrorModel gen_surface_code_capacity(size_t distance, double p);

struct RandomLdpcParams {
  size_t num_errors = 10;
  size_t num_detectors = 8;
  size_t max_row_weight = 3;
  double p_min = 0.01;
  double p_max = 0.4;
};

// Each channel flips 1..max_row_weight distinct uniformly chosen detectors
// with probability uniform in [p_min, p_max]; L0 is attached to a random
// non-empty subset of channels. Duplicate channels are merged, so the
// result may have fewer than num_errors channels. num_errors = 0 gives the
// empty model.
ErrorModel gen_random_ldpc(const RandomLdpcParams& params, Rng& rng);

}  // namespace mle

#endif  // MLE_GENERATORS_H_
