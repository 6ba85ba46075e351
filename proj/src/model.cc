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

#include "mle/model.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "mle/errors.h"

namespace mle {

double weight_of(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("probability must lie in (0, 1), got " +
                      std::to_string(p));
  }
  return -std::log(p / (1.0 - p));
}

Syndrome::Syndrome(std::vector<DetectorId> detectors)
    : activated_(std::move(detectors)) {
  std::sort(activated_.begin(), activated_.end());
  activated_.erase(std::unique(activated_.begin(), activated_.end()),
                   activated_.end());
}

BitVec Syndrome::to_bitvec(size_t num_detectors) const {
  BitVec bits(num_detectors);
  for (DetectorId d : activated_) {
    if (d >= num_detectors) {
      throw std::out_of_range("syndrome detector D" + std::to_string(d) +
                              " out of range");
    }
    bits.set(d);
  }
  return bits;
}

Syndrome Syndrome::from_bitvec(const BitVec& bits) {
  std::vector<DetectorId> dets;
  bits.for_each_set([&](size_t k) { dets.push_back(static_cast<DetectorId>(k)); });
  return Syndrome(std::move(dets));
}

ErrorModel::ErrorModel(std::vector<ErrorChannel> channels, size_t num_detectors,
                       size_t num_observables,
                       std::vector<std::vector<double>> detector_coords)
    : channels_(std::move(channels)),
      num_detectors_(num_detectors),
      num_observables_(num_observables),
      detector_coords_(std::move(detector_coords)),
      incidence_(num_detectors) {
  if (!detector_coords_.empty() && detector_coords_.size() != num_detectors_) {
    throw std::invalid_argument("detector_coords must have one entry per detector");
  }
  for (size_t i = 0; i < channels_.size(); ++i) {
    ErrorChannel& ch = channels_[i];
    ch.index = static_cast<ChannelId>(i);
    if (ch.observables.size() != num_observables_) {
      throw std::invalid_argument("channel " + std::to_string(i) +
                                  " has an observable mask of the wrong length");
    }
    for (size_t k = 0; k < ch.detectors.size(); ++k) {
      if (ch.detectors[k] >= num_detectors_) {
        throw std::invalid_argument("channel " + std::to_string(i) +
                                    " references a detector out of range");
      }
      if (k > 0 && ch.detectors[k - 1] >= ch.detectors[k]) {
        throw std::invalid_argument("channel " + std::to_string(i) +
                                    " detectors are not strictly increasing");
      }
      incidence_[ch.detectors[k]].push_back(ch.index);
    }
  }
}

bool ErrorModel::has_complete_coords() const {
  if (detector_coords_.empty() || num_detectors_ == 0) return false;
  const size_t t = detector_coords_[0].size();
  if (t == 0) return false;
  return std::all_of(detector_coords_.begin(), detector_coords_.end(),
                     [t](const auto& c) { return c.size() == t; });
}

size_t ErrorModel::num_pure_logical() const {
  return static_cast<size_t>(std::count_if(
      channels_.begin(), channels_.end(), [](const ErrorChannel& ch) {
        return ch.detectors.empty() && ch.observables.any();
      }));
}

bool ErrorModel::is_canonical() const {
  std::map<std::pair<std::vector<DetectorId>, std::vector<size_t>>, int> seen;
  for (const auto& ch : channels_) {
    if (!(ch.probability > 0.0 && ch.probability <= 0.5)) return false;
    if (ch.detectors.empty() && ch.observables.none()) return false;
    if (!seen.emplace(std::make_pair(ch.detectors, ch.observables.set_indices()), 0)
             .second) {
      return false;
    }
  }
  return true;
}

bool ErrorModel::operator==(const ErrorModel& other) const {
  return num_detectors_ == other.num_detectors_ &&
         num_observables_ == other.num_observables_ &&
         channels_ == other.channels_ &&
         detector_coords_ == other.detector_coords_;
}

ErrorModel canonicalize(const ErrorModel& model) {
  using Key = std::pair<std::vector<DetectorId>, std::vector<size_t>>;
  std::vector<ErrorChannel> merged;
  std::map<Key, size_t> position;
  for (const auto& ch : model.channels()) {
    if (!(ch.probability > 0.0 && ch.probability < 1.0)) {
      throw DomainError("channel " + std::to_string(ch.index) +
                        " has probability outside (0, 1)");
    }
    if (ch.probability > 0.5) {
      throw UnsupportedProbability("channel " + std::to_string(ch.index) +
                                   " has probability " +
                                   std::to_string(ch.probability) + " > 1/2");
    }
    if (ch.detectors.empty() && ch.observables.none()) continue;
    Key key{ch.detectors, ch.observables.set_indices()};
    auto [it, inserted] = position.emplace(std::move(key), merged.size());
    if (inserted) {
      merged.push_back(ch);
    } else {
      // Two independent flips of the same mechanism: XOR of Bernoullis.
      double& p = merged[it->second].probability;
      const double q = ch.probability;
      p = p * (1.0 - q) + q * (1.0 - p);
    }
  }
  for (auto& ch : merged) ch.weight = weight_of(ch.probability);
  return ErrorModel(std::move(merged), model.num_detectors(),
                    model.num_observables(), model.detector_coords());
}

Syndrome syndrome_of(const ErrorModel& model, std::span<const ChannelId> errors) {
  BitVec bits(model.num_detectors());
  for (ChannelId e : errors) {
    for (DetectorId d : model.channel(e).detectors) bits.flip(d);
  }
  return Syndrome::from_bitvec(bits);
}

BitVec observables_of(const ErrorModel& model,
                      std::span<const ChannelId> errors) {
  BitVec obs(model.num_observables());
  for (ChannelId e : errors) obs ^= model.channel(e).observables;
  return obs;
}

ErrorModel reorder_detectors(const ErrorModel& model,
                             std::span<const DetectorId> perm) {
  const size_t k = model.num_detectors();
  if (perm.size() != k) {
    throw InvalidPermutation("permutation has " + std::to_string(perm.size()) +
                             " entries, model has " + std::to_string(k) +
                             " detectors");
  }
  std::vector<bool> hit(k, false);
  for (DetectorId target : perm) {
    if (target >= k || hit[target]) {
      throw InvalidPermutation("not a bijection on detector indices");
    }
    hit[target] = true;
  }
  std::vector<ErrorChannel> channels = model.channels();
  for (auto& ch : channels) {
    for (auto& d : ch.detectors) d = perm[d];
    std::sort(ch.detectors.begin(), ch.detectors.end());
  }
  std::vector<std::vector<double>> coords;
  if (!model.detector_coords().empty()) {
    coords.resize(k);
    for (size_t d = 0; d < k; ++d) coords[perm[d]] = model.detector_coords()[d];
  }
  return ErrorModel(std::move(channels), k, model.num_observables(),
                    std::move(coords));
}

}  // namespace mle
