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

#include "mle/search.h"

#include <algorithm>
#include <chrono>
#include <limits>
#include <queue>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "mle/errors.h"

namespace mle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-search constants shared by every expansion.
struct Context {
  const ErrorModel& model;
  const SearchConfig& config;
  detail::HeuristicMode mode;
  // rank[d] = position of d in the detector order; empty for natural order.
  std::vector<uint32_t> rank;

  Context(const ErrorModel& m, const SearchConfig& c, detail::HeuristicMode hm)
      : model(m), config(c), mode(hm) {
    const auto& order = c.detector_order;
    if (order.empty()) return;
    const size_t k = m.num_detectors();
    if (order.size() != k) {
      throw InvalidPermutation("detector_order has " + std::to_string(order.size()) +
                               " entries, model has " + std::to_string(k) +
                               " detectors");
    }
    rank.assign(k, UINT32_MAX);
    for (size_t pos = 0; pos < k; ++pos) {
      const DetectorId d = order[pos];
      if (d >= k || rank[d] != UINT32_MAX) {
        throw InvalidPermutation("detector_order is not a permutation");
      }
      rank[d] = static_cast<uint32_t>(pos);
    }
  }

  DetectorId lowest(const BitVec& residual) const {
    DetectorId best = UINT32_MAX;
    if (rank.empty()) {
      residual.for_each_set([&](size_t d) {
        if (best == UINT32_MAX) best = static_cast<DetectorId>(d);
      });
      return best;
    }
    uint32_t best_rank = UINT32_MAX;
    residual.for_each_set([&](size_t d) {
      if (rank[d] < best_rank) {
        best_rank = rank[d];
        best = static_cast<DetectorId>(d);
      }
    });
    return best;
  }

  double h(const BitVec& residual, const BitVec& forbidden) const {
    if (mode == detail::HeuristicMode::kZero) return 0.0;
    return heuristic(model, residual, forbidden);
  }

  double f(double g, double h, size_t r) const {
    return g + h + config.det_penalty * static_cast<double>(r);
  }
};

struct Child {
  ChannelId added;
  BitVec residual;
  BitVec forbidden;
  size_t num_residual;
  double g;
  double h;
};

void add_at_most_two(const ErrorModel& model, std::span<const ChannelId> errors,
                     BitVec& forbidden) {
  for (ChannelId e : forbidden_at_most_two(model, errors)) forbidden.set(e);
}

// Shared by decode and expand_node. `path` is consulted to exclude members
// of F and, with at_most_two, to count errors per detector; decode passes
// an empty path when neither is needed.
std::vector<Child> expand(const Context& ctx, const BitVec& residual,
                          const BitVec& forbidden, size_t num_residual,
                          std::span<const ChannelId> path, double g) {
  const ErrorModel& model = ctx.model;
  std::vector<Child> children;
  const DetectorId d_min = ctx.lowest(residual);
  if (d_min == UINT32_MAX) return children;

  std::vector<ChannelId> candidates;
  for (ChannelId e : model.incidence(d_min)) {
    if (forbidden.get(e)) continue;
    if (std::find(path.begin(), path.end(), e) != path.end()) continue;
    candidates.push_back(e);
  }

  // Child i forbids candidates[0..i]: everything skipped in favour of
  // candidates[i], plus candidates[i] itself.
  BitVec running = forbidden;
  std::vector<ChannelId> grown(path.begin(), path.end());
  grown.push_back(0);
  for (ChannelId e : candidates) {
    running.set(e);
    Child child{e, residual, running, num_residual, g + model.channel(e).weight, 0.0};
    for (DetectorId d : model.channel(e).detectors) {
      if (child.residual.get(d)) {
        --child.num_residual;
      } else {
        ++child.num_residual;
      }
      child.residual.flip(d);
    }
    if (ctx.config.at_most_two) {
      grown.back() = e;
      add_at_most_two(model, grown, child.forbidden);
    }
    child.h = ctx.h(child.residual, child.forbidden);
    children.push_back(std::move(child));
  }
  return children;
}

struct Node {
  int64_t parent;
  ChannelId added;
  double g;
  double h;
  size_t num_residual;
  BitVec residual;
  BitVec forbidden;
};

struct QueueEntry {
  double f;
  size_t r;
  uint64_t seq;
  size_t node;
};

// priority_queue pops the greatest element; "greater" here means later.
struct PopsLater {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.r != b.r) return a.r > b.r;
    return a.seq > b.seq;
  }
};

std::vector<ChannelId> path_of(const std::vector<Node>& arena, size_t idx) {
  std::vector<ChannelId> path;
  for (int64_t i = static_cast<int64_t>(idx); arena[i].parent >= 0; i = arena[i].parent) {
    path.push_back(arena[i].added);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

SearchStats& SearchStats::operator+=(const SearchStats& other) {
  nodes_expanded += other.nodes_expanded;
  nodes_pushed += other.nodes_pushed;
  nodes_pruned_beam += other.nodes_pruned_beam;
  nodes_pruned_revisit += other.nodes_pruned_revisit;
  pq_peak = std::max(pq_peak, other.pq_peak);
  pure_logical_channels = std::max(pure_logical_channels, other.pure_logical_channels);
  wall_time_us += other.wall_time_us;
  return *this;
}

double det_cost(const ErrorModel& model, const BitVec& residual,
                const BitVec& forbidden, DetectorId d) {
  double best = kInf;
  for (ChannelId e : model.incidence(d)) {
    if (forbidden.get(e)) continue;
    size_t hits = 0;
    for (DetectorId other : model.channel(e).detectors) hits += residual.get(other);
    // d itself is in the residual, so hits >= 1.
    best = std::min(best, model.channel(e).weight / static_cast<double>(hits));
  }
  return best;
}

double heuristic(const ErrorModel& model, const BitVec& residual,
                 const BitVec& forbidden) {
  double total = 0.0;
  bool dead = false;
  residual.for_each_set([&](size_t d) {
    if (dead) return;
    const double c = det_cost(model, residual, forbidden, static_cast<DetectorId>(d));
    if (c == kInf) dead = true;
    total += c;
  });
  return dead ? kInf : total;
}

std::vector<ChannelId> forbidden_by_precedence(
    ChannelId chosen, std::span<const ChannelId> candidates) {
  std::vector<ChannelId> out;
  for (ChannelId c : candidates) {
    if (c < chosen) out.push_back(c);
  }
  return out;
}

std::vector<ChannelId> forbidden_at_most_two(const ErrorModel& model,
                                             std::span<const ChannelId> errors) {
  std::unordered_map<DetectorId, int> count;
  for (ChannelId e : errors) {
    for (DetectorId d : model.channel(e).detectors) ++count[d];
  }
  std::vector<ChannelId> out;
  for (const auto& [d, n] : count) {
    if (n < 2) continue;
    for (ChannelId e : model.incidence(d)) {
      if (std::find(errors.begin(), errors.end(), e) == errors.end()) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SearchNode root_node(const ErrorModel& model, const Syndrome& syndrome,
                     const SearchConfig& config) {
  SearchNode root;
  root.residual = syndrome.to_bitvec(model.num_detectors());
  root.num_residual = syndrome.size();
  root.forbidden = BitVec(model.num_channels());
  root.h_cost = heuristic(model, root.residual, root.forbidden);
  root.f_cost = root.h_cost + config.det_penalty * static_cast<double>(root.num_residual);
  return root;
}

std::vector<SearchNode> expand_node(const ErrorModel& model,
                                    const SearchNode& node,
                                    const SearchConfig& config) {
  Context ctx(model, config, detail::HeuristicMode::kAdmissible);
  std::vector<SearchNode> out;
  for (auto& c : expand(ctx, node.residual, node.forbidden, node.num_residual,
                        node.errors, node.g_cost)) {
    SearchNode child;
    child.errors = node.errors;
    child.errors.push_back(c.added);
    child.g_cost = c.g;
    child.h_cost = c.h;
    child.f_cost = ctx.f(c.g, c.h, c.num_residual);
    child.residual = std::move(c.residual);
    child.num_residual = c.num_residual;
    child.forbidden = std::move(c.forbidden);
    out.push_back(std::move(child));
  }
  return out;
}

namespace detail {

DecodeOutcome run_search(const ErrorModel& model, const Syndrome& syndrome,
                         const SearchConfig& config, HeuristicMode mode,
                         const ExpandObserver* on_expand) {
  const auto start = std::chrono::steady_clock::now();
  Context ctx(model, config, mode);

  DecodeOutcome out;
  out.stats.pure_logical_channels = model.num_pure_logical();
  BitVec residual = syndrome.to_bitvec(model.num_detectors());
  for (DetectorId d : syndrome.activated()) {
    if (model.incidence(d).empty()) {
      throw UnsatisfiableSyndrome("detector D" + std::to_string(d) +
                                  " is activated but no error flips it");
    }
  }

  auto finish = [&](DecodeOutcome& o) -> DecodeOutcome& {
    o.stats.wall_time_us = std::chrono::duration<double, std::micro>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    return o;
  };
  auto give_up = [&]() -> DecodeOutcome {
    out.low_confidence = true;
    out.errors.clear();
    out.cost = kInf;
    out.predicted_observables = BitVec(model.num_observables());
    return finish(out);
  };

  std::vector<Node> arena;
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, PopsLater> queue;
  std::unordered_set<BitVec, BitVecHash> visited;
  uint64_t seq = 0;

  auto push = [&](Node node) -> bool {
    if (config.pqlimit && out.stats.nodes_pushed >= *config.pqlimit) return false;
    const double f = ctx.f(node.g, node.h, node.num_residual);
    queue.push({f, node.num_residual, seq++, arena.size()});
    arena.push_back(std::move(node));
    ++out.stats.nodes_pushed;
    out.stats.pq_peak = std::max<uint64_t>(out.stats.pq_peak, queue.size());
    return true;
  };

  {
    const size_t r0 = residual.count();
    BitVec none(model.num_channels());
    const double h0 = ctx.h(residual, none);
    if (h0 == kInf) return give_up();
    if (!push(Node{-1, 0, 0.0, h0, r0, std::move(residual), std::move(none)})) {
      return give_up();
    }
  }

  size_t r_min = std::numeric_limits<size_t>::max();
  const bool need_path = config.at_most_two || on_expand;
  while (!queue.empty()) {
    const QueueEntry top = queue.top();
    queue.pop();
    Node& node = arena[top.node];

    if (node.num_residual == 0) {
      out.errors = path_of(arena, top.node);
      std::sort(out.errors.begin(), out.errors.end());
      out.cost = 0.0;
      for (ChannelId e : out.errors) out.cost += model.channel(e).weight;
      out.predicted_observables = observables_of(model, out.errors);
      out.low_confidence = false;
      return finish(out);
    }
    if (config.no_revisit && !visited.insert(revisit_key(node.residual)).second) {
      ++out.stats.nodes_pruned_revisit;
      continue;
    }
    if (!beam_admit(node.num_residual, r_min, config.beam)) {
      ++out.stats.nodes_pruned_beam;
      continue;
    }
    r_min = std::min(r_min, node.num_residual);
    ++out.stats.nodes_expanded;

    const std::vector<ChannelId> path =
        need_path ? path_of(arena, top.node) : std::vector<ChannelId>{};
    if (on_expand) {
      SearchNode view;
      view.errors = path;
      view.g_cost = node.g;
      view.h_cost = node.h;
      view.f_cost = top.f;
      view.residual = node.residual;
      view.num_residual = node.num_residual;
      view.forbidden = node.forbidden;
      (*on_expand)(view);
    }

    std::vector<Child> children =
        expand(ctx, node.residual, node.forbidden, node.num_residual, path, node.g);
    // The popped node is never expanded again; only its parent link and
    // added channel are needed for path reconstruction.
    node.residual = BitVec();
    node.forbidden = BitVec();

    for (Child& c : children) {
      if (c.h == kInf) continue;
      if (!beam_admit(c.num_residual, r_min, config.beam)) {
        ++out.stats.nodes_pruned_beam;
        continue;
      }
      if (config.no_revisit && visited.count(c.residual)) {
        ++out.stats.nodes_pruned_revisit;
        continue;
      }
      if (!push(Node{static_cast<int64_t>(top.node), c.added, c.g, c.h,
                     c.num_residual, std::move(c.residual), std::move(c.forbidden)})) {
        return give_up();
      }
    }
  }
  return give_up();
}

}  // namespace detail

DecodeOutcome decode(const ErrorModel& model, const Syndrome& syndrome,
                     const SearchConfig& config) {
  return detail::run_search(model, syndrome, config,
                            detail::HeuristicMode::kAdmissible, nullptr);
}

DecodeOutcome decode_traced(const ErrorModel& model, const Syndrome& syndrome,
                            const SearchConfig& config,
                            const ExpandObserver& on_expand) {
  return detail::run_search(model, syndrome, config,
                            detail::HeuristicMode::kAdmissible, &on_expand);
}

}  // namespace mle
