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

#include "mle/generators.h"

#include <algorithm>
#include <string>

#include "mle/errors.h"

namespace mle {

namespace {

void check_code_params(size_t distance, double p) {
  if (distance < 3 || distance % 2 == 0) {
    throw InvalidParams("distance must be odd and at least 3, got " + std::to_string(distance));
  }
  if (!(p > 0.0 && p <= 0.5)) {
    throw InvalidParams("p must lie in (0, 1/2], got " + std::to_string(p));
  }
}

ErrorChannel make_channel(double p, std::vector<DetectorId> dets, size_t num_obs,
                          bool flips_l0) {
  ErrorChannel ch;
  ch.probability = p;
  ch.weight = weight_of(p);
  std::sort(dets.begin(), dets.end());
  ch.detectors = std::move(dets);
  ch.observables = BitVec(num_obs);
  if (flips_l0) ch.observables.set(0);
  return ch;
}

}  // namespace

ErrorModel gen_repetition_code(size_t distance, double p) {
  check_code_params(distance, p);
  const size_t k = distance - 1;
  std::vector<ErrorChannel> channels;
  for (size_t i = 0; i < distance; ++i) {
    std::vector<DetectorId> dets;
    if (i >= 1) dets.push_back(static_cast<DetectorId>(i - 1));
    if (i < k) dets.push_back(static_cast<DetectorId>(i));
    channels.push_back(make_channel(p, std::move(dets), 1, i == 0));
  }
  return ErrorModel(std::move(channels), k, 1);
}

ErrorModel gen_surface_code_capacity(size_t distance, double p) {
  check_code_params(distance, p);
  const size_t d = distance;
  // Z plaquettes sit on the corners (i, j) of the d x d data grid with i + j
  // odd: the bulk ones, plus weight-2 ones on the left and right edges.
  std::vector<std::pair<size_t, size_t>> plaquettes;
  for (size_t i = 0; i <= d; ++i) {
    for (size_t j = 0; j <= d; ++j) {
      if ((i + j) % 2 == 0 || i == 0 || i == d) continue;
      plaquettes.emplace_back(i, j);
    }
  }
  std::vector<std::vector<DetectorId>> touching(d * d);
  std::vector<std::vector<double>> coords;
  for (size_t det = 0; det < plaquettes.size(); ++det) {
    const auto [i, j] = plaquettes[det];
    coords.push_back({static_cast<double>(i), static_cast<double>(j)});
    for (size_t r = i - 1; r <= i; ++r) {
      for (size_t c = (j == 0 ? 0 : j - 1); c <= j && c < d; ++c) {
        if (r < d) touching[r * d + c].push_back(static_cast<DetectorId>(det));
      }
    }
  }
  std::vector<ErrorChannel> channels;
  for (size_t q = 0; q < d * d; ++q) {
    channels.push_back(make_channel(p, touching[q], 1, q < d));
  }
  return ErrorModel(std::move(channels), plaquettes.size(), 1, std::move(coords));
}

ErrorModel gen_random_ldpc(const RandomLdpcParams& params, Rng& rng) {
  if (params.num_errors == 0) return ErrorModel();
  if (params.num_detectors == 0) throw InvalidParams("num_detectors must be positive");
  if (params.max_row_weight == 0 || params.max_row_weight > params.num_detectors) {
    throw InvalidParams("max_row_weight must lie in [1, num_detectors]");
  }
  if (!(params.p_min > 0.0 && params.p_min <= params.p_max && params.p_max <= 0.5)) {
    throw InvalidParams("need 0 < p_min <= p_max <= 1/2");
  }
  std::vector<DetectorId> pool(params.num_detectors);
  for (size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<DetectorId>(i);

  std::vector<ErrorChannel> channels;
  bool any_logical = false;
  for (size_t e = 0; e < params.num_errors; ++e) {
    const size_t w = 1 + static_cast<size_t>(rng.below(params.max_row_weight));
    // Partial Fisher-Yates: the first w entries become a uniform w-subset.
    for (size_t i = 0; i < w; ++i) {
      const size_t j = i + static_cast<size_t>(rng.below(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    const double p = params.p_min + (params.p_max - params.p_min) * rng.uniform();
    const bool logical = rng.below(2) == 1;
    any_logical |= logical;
    channels.push_back(make_channel(
        p, std::vector<DetectorId>(pool.begin(), pool.begin() + w), 1, logical));
  }
  if (!any_logical) channels[rng.below(channels.size())].observables.set(0);
  return canonicalize(ErrorModel(std::move(channels), params.num_detectors, 1));
}

}  // namespace mle
