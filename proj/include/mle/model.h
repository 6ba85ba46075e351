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

#ifndef MLE_MODEL_H_
#define MLE_MODEL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mle/bitvec.h"

namespace mle {

using ChannelId = uint32_t;
using DetectorId = uint32_t;

// Weight of an error with probability p: -ln(p / (1 - p)). Throws
// DomainError unless 0 < p < 1.
double weight_of(double p);

struct ErrorChannel {
  ChannelId index = 0;
  double probability = 0;
  double weight = 0;
  // Strictly increasing.
  std::vector<DetectorId> detectors;
  // Sized to the owning model's observable count.
  BitVec observables;

  bool operator==(const ErrorChannel&) const = default;
};

// Set of activated detectors, kept sorted and duplicate-free.
class Syndrome {
 public:
  Syndrome() = default;
  explicit Syndrome(std::vector<DetectorId> detectors);

  const std::vector<DetectorId>& activated() const { return activated_; }
  bool empty() const { return activated_.empty(); }
  size_t size() const { return activated_.size(); }

  BitVec to_bitvec(size_t num_detectors) const;
  static Syndrome from_bitvec(const BitVec& bits);

  bool operator==(const Syndrome&) const = default;

 private:
  std::vector<DetectorId> activated_;
};

// The hypergraph being decoded against. Immutable once built; the
// detector->channel incidence is derived in the constructor.
class ErrorModel {
 public:
  ErrorModel() = default;

  // Channel indices are reassigned to their positions. Throws
  // std::invalid_argument when a channel references a detector >=
  // num_detectors, lists detectors out of order, or carries an observable
  // mask of the wrong length. `detector_coords` is either empty or has one
  // entry per detector; an empty entry means "no coordinates".
  ErrorModel(std::vector<ErrorChannel> channels, size_t num_detectors,
             size_t num_observables,
             std::vector<std::vector<double>> detector_coords = {});

  const std::vector<ErrorChannel>& channels() const { return channels_; }
  const ErrorChannel& channel(ChannelId e) const { return channels_[e]; }
  size_t num_channels() const { return channels_.size(); }
  size_t num_detectors() const { return num_detectors_; }
  size_t num_observables() const { return num_observables_; }

  // E(d): channels flipping detector d, increasing.
  const std::vector<ChannelId>& incidence(DetectorId d) const {
    return incidence_[d];
  }

  // Empty when no detector carries coordinates.
  const std::vector<std::vector<double>>& detector_coords() const {
    return detector_coords_;
  }
  // True when every detector has a coordinate vector of one common length.
  bool has_complete_coords() const;

  // Channels with observables but no detectors; the search never uses them.
  size_t num_pure_logical() const;

  // Probabilities in (0, 1/2], no duplicate (detectors, observables) pairs,
  // no channel with neither detectors nor observables.
  bool is_canonical() const;

  bool operator==(const ErrorModel& other) const;

 private:
  std::vector<ErrorChannel> channels_;
  size_t num_detectors_ = 0;
  size_t num_observables_ = 0;
  std::vector<std::vector<double>> detector_coords_;
  std::vector<std::vector<ChannelId>> incidence_;
};

// Rejects p > 1/2 with UnsupportedProbability, XOR-merges channels sharing
// the same (detectors, observables) left to right into the earliest
// position, drops channels that touch nothing, recomputes weights.
ErrorModel canonicalize(const ErrorModel& model);

// Symmetric difference of D(e) over e in `errors`.
Syndrome syndrome_of(const ErrorModel& model, std::span<const ChannelId> errors);
BitVec observables_of(const ErrorModel& model,
                      std::span<const ChannelId> errors);

// Relabels detector d as perm[d] everywhere (channels, incidence, coords).
// Channel order is unchanged. Throws InvalidPermutation unless perm is a
// bijection on 0..K-1.
ErrorModel reorder_detectors(const ErrorModel& model,
                             std::span<const DetectorId> perm);

}  // namespace mle

#endif  // MLE_MODEL_H_
