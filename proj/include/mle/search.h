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

#ifndef MLE_SEARCH_H_
#define MLE_SEARCH_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mle/bitvec.h"
#include "mle/model.h"

namespace mle {

// Knobs for one best-first search. The defaults give an exact decoder.
struct SearchConfig {
  // Skip nodes with r(F) > r_min + beam. nullopt means unbounded.
  std::optional<size_t> beam;
  // Give up (low confidence) once this many nodes have been pushed in total.
  std::optional<size_t> pqlimit;
  // Adds det_penalty * r(F) to the queue priority only.
  double det_penalty = 0.0;
  // Never visit two nodes with the same residual detection set.
  bool no_revisit = false;
  // Also forbid errors that would put a third chosen error on a detector.
  bool at_most_two = false;
  // detector_order[0] is treated as the lowest detector. Empty means the
  // natural order 0..K-1.
  std::vector<DetectorId> detector_order;
  uint64_t rng_seed = 0;

  // True when the first EXIT node popped is guaranteed to be a most-likely
  // error (pqlimit only ever turns a result into a low-confidence one).
  bool exact_mode() const {
    return !beam && !at_most_two && det_penalty == 0.0 && !no_revisit;
  }
};

struct SearchStats {
  uint64_t nodes_expanded = 0;
  uint64_t nodes_pushed = 0;
  uint64_t nodes_pruned_beam = 0;
  uint64_t nodes_pruned_revisit = 0;
  uint64_t pq_peak = 0;
  uint64_t pure_logical_channels = 0;
  double wall_time_us = 0.0;

  // Sums counters, keeps the larger peak and pure-logical count.
  SearchStats& operator+=(const SearchStats& other);
};

struct DecodeOutcome {
  // Chosen error set, increasing. Empty for low-confidence outcomes.
  std::vector<ChannelId> errors;
  // Sum of weights over `errors`; +inf when low_confidence.
  double cost = 0.0;
  BitVec predicted_observables;
  bool low_confidence = false;
  SearchStats stats;
};

// A vertex F of the search tree.
struct SearchNode {
  // Channels in the order they were added along the path from the root.
  std::vector<ChannelId> errors;
  double g_cost = 0.0;
  double h_cost = 0.0;
  // g + h + det_penalty * num_residual.
  double f_cost = 0.0;
  // Syndrome xor D(F).
  BitVec residual;
  size_t num_residual = 0;
  // Channels no descendant may add. Nodes built by the search also carry
  // their own members here, which only tightens the heuristic.
  BitVec forbidden;
};

// Most-likely error by A* over the error-subset tree. Throws
// UnsatisfiableSyndrome when an activated detector has no incident channel,
// std::out_of_range for detectors outside the model, and InvalidPermutation
// for a malformed detector_order.
DecodeOutcome decode(const ErrorModel& model, const Syndrome& syndrome,
                     const SearchConfig& config = {});

using ExpandObserver = std::function<void(const SearchNode&)>;

// decode() that reports every node it expands.
DecodeOutcome decode_traced(const ErrorModel& model, const Syndrome& syndrome,
                            const SearchConfig& config,
                            const ExpandObserver& on_expand);

SearchNode root_node(const ErrorModel& model, const Syndrome& syndrome,
                     const SearchConfig& config = {});

// Children of `node`: one per channel incident to the lowest residual
// detector (under config.detector_order) that is neither forbidden nor
// already in F, in increasing channel index. Children whose heuristic is
// infinite are still returned. Requires a non-empty residual.
std::vector<SearchNode> expand_node(const ErrorModel& model,
                                    const SearchNode& node,
                                    const SearchConfig& config = {});

// Candidates strictly below `chosen`: skipped in its favour, so no
// descendant may add them.
std::vector<ChannelId> forbidden_by_precedence(
    ChannelId chosen, std::span<const ChannelId> candidates);

// Channels outside `errors` whose addition would leave some detector with
// more than two incident chosen errors.
std::vector<ChannelId> forbidden_at_most_two(const ErrorModel& model,
                                             std::span<const ChannelId> errors);

// Admissible lower bound on the cost of clearing `residual` with
// non-forbidden channels: the sum of det_cost over residual detectors.
// +inf if some residual detector has every incident channel forbidden.
double heuristic(const ErrorModel& model, const BitVec& residual,
                 const BitVec& forbidden);

// min over non-forbidden e in E(d) of w(e) / |residual & D(e)|.
double det_cost(const ErrorModel& model, const BitVec& residual,
                const BitVec& forbidden, DetectorId d);

// r_min may be SIZE_MAX before anything has been visited.
inline bool beam_admit(size_t num_residual, size_t r_min,
                       std::optional<size_t> beam) {
  return !beam || num_residual <= r_min || num_residual - r_min <= *beam;
}

// Residual sets compare and hash by content.
using RevisitKey = BitVec;
inline RevisitKey revisit_key(const BitVec& residual) { return residual; }

namespace detail {

enum class HeuristicMode { kAdmissible, kZero };

DecodeOutcome run_search(const ErrorModel& model, const Syndrome& syndrome,
                         const SearchConfig& config, HeuristicMode mode,
                         const ExpandObserver* on_expand);

}  // namespace detail

}  // namespace mle

#endif  // MLE_SEARCH_H_
