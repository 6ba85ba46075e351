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

#include "mle/simulator.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <omp.h>
#include <string>

#include "mle/errors.h"

namespace mle {

namespace {

struct ShotResult {
  bool error = false;
  bool low_confidence = false;
  uint64_t nodes_expanded = 0;
  double wall_time_us = 0.0;
  std::exception_ptr failure;
};

ShotResult run_one(const ErrorModel& model, const ExperimentConfig& config,
                   const DecoderSpec& decoder, uint64_t index) {
  ShotResult r;
  try {
    Rng rng = Rng::for_stream(config.seed, index);
    const Shot shot = sample_shot(model, rng);
    const DecodeOutcome out = decode_shot(model, shot.syndrome, decoder);
    r.low_confidence = out.low_confidence;
    r.error = out.low_confidence || out.predicted_observables != shot.true_observables;
    r.nodes_expanded = out.stats.nodes_expanded;
    r.wall_time_us = out.stats.wall_time_us;
  } catch (...) {
    r.failure = std::current_exception();
  }
  return r;
}

std::string describe(const std::exception_ptr& p) {
  try {
    std::rethrow_exception(p);
  } catch (const std::exception& e) {
    return e.what();
  } catch (...) {
    return "unknown error";
  }
}

ShotStats reduce(const std::vector<ShotResult>& results, size_t rounds) {
  uint64_t shots = 0, errors = 0, low = 0, nodes = 0;
  double wall = 0.0;
  std::string failure;
  for (const auto& r : results) {
    if (r.failure) {
      failure = describe(r.failure);
      break;
    }
    ++shots;
    errors += r.error;
    low += r.low_confidence;
    nodes += r.nodes_expanded;
    wall += r.wall_time_us;
  }
  ShotStats stats = shots ? summarize(shots, errors, low, rounds) : ShotStats{};
  stats.rounds = rounds;
  stats.nodes_expanded_total = nodes;
  stats.wall_time_us_total = wall;
  if (!failure.empty()) {
    stats.valid = false;
    stats.failure = failure;
  }
  return stats;
}

void check(const ExperimentConfig& config) {
  if (config.num_shots == 0) throw InvalidParams("num_shots must be at least 1");
  if (config.rounds == 0) throw InvalidParams("rounds must be at least 1");
}

}  // namespace

Shot sample_shot(const ErrorModel& model, Rng& rng) {
  Shot shot;
  BitVec dets(model.num_detectors());
  shot.true_observables = BitVec(model.num_observables());
  for (const auto& ch : model.channels()) {
    if (rng.uniform() >= ch.probability) continue;
    shot.fired_errors.push_back(ch.index);
    for (DetectorId d : ch.detectors) dets.flip(d);
    shot.true_observables ^= ch.observables;
  }
  shot.syndrome = Syndrome::from_bitvec(dets);
  return shot;
}

double per_round_rate(double per_shot, size_t rounds) {
  if (!(per_shot >= 0.0 && per_shot <= 0.5)) {
    throw DomainError("per-shot rate must lie in [0, 1/2], got " + std::to_string(per_shot));
  }
  if (rounds == 0) throw DomainError("rounds must be at least 1");
  if (rounds == 1) return per_shot;
  return 0.5 * (1.0 - std::pow(1.0 - 2.0 * per_shot, 1.0 / static_cast<double>(rounds)));
}

double compose_rounds(double per_round, size_t rounds) {
  if (!(per_round >= 0.0 && per_round <= 0.5)) {
    throw DomainError("per-round rate must lie in [0, 1/2]");
  }
  if (rounds == 1) return per_round;
  return 0.5 * (1.0 - std::pow(1.0 - 2.0 * per_round, static_cast<double>(rounds)));
}

std::pair<double, double> wilson_interval(uint64_t successes, uint64_t trials, double z) {
  if (trials == 0) throw DomainError("wilson_interval needs at least one trial");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  // Pin the endpoints at the boundary counts, where rounding could push the
  // interval past p.
  const double lo = successes == 0 ? 0.0 : std::clamp(center - half, 0.0, p);
  const double hi = successes == trials ? 1.0 : std::clamp(center + half, p, 1.0);
  return {lo, hi};
}

ShotStats summarize(uint64_t shots, uint64_t errors, uint64_t low_confidence,
                    size_t rounds) {
  ShotStats s;
  s.shots = shots;
  s.errors = errors;
  s.low_confidence = low_confidence;
  s.rounds = rounds;
  s.per_shot = static_cast<double>(errors) / static_cast<double>(shots);
  s.ci90_per_shot = wilson_interval(errors, shots);
  if (s.per_shot <= 0.5) {
    s.per_round = per_round_rate(s.per_shot, rounds);
    s.ci90_per_round = std::make_pair(
        per_round_rate(s.ci90_per_shot.first, rounds),
        per_round_rate(std::min(s.ci90_per_shot.second, 0.5), rounds));
  }
  return s;
}

ShotStats run_experiment_serial(const ErrorModel& model,
                                const ExperimentConfig& config,
                                const DecoderSpec& decoder) {
  check(config);
  std::vector<ShotResult> results;
  results.reserve(config.num_shots);
  for (uint64_t i = 0; i < config.num_shots; ++i) {
    results.push_back(run_one(model, config, decoder, i));
    if (results.back().failure) break;
  }
  return reduce(results, config.rounds);
}

ShotStats run_experiment(const ErrorModel& model, const ExperimentConfig& config,
                         const DecoderSpec& decoder) {
  check(config);
  const auto n = static_cast<int64_t>(config.num_shots);
  std::vector<ShotResult> results(config.num_shots);
#pragma omp parallel for schedule(dynamic, 64) \
    num_threads(config.threads > 0 ? config.threads : 1)
  for (int64_t i = 0; i < n; ++i) {
    results[i] = run_one(model, config, decoder, static_cast<uint64_t>(i));
  }
  return reduce(results, config.rounds);
}

}  // namespace mle
