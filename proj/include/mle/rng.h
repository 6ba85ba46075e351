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

#ifndef MLE_RNG_H_
#define MLE_RNG_H_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace mle {

uint64_t splitmix64(uint64_t& state);

// xoshiro256** 1.0 (Blackman & Vigna), seeded through splitmix64. Output is
// identical across platforms and standard libraries, unlike std::mt19937
// paired with std::*_distribution.
class Rng {
 public:
  using result_type = uint64_t;

  explicit Rng(uint64_t seed = 0);

  // Independent substream for (seed, stream), e.g. one per shot, so results
  // do not depend on how work is divided among threads.
  static Rng for_stream(uint64_t seed, uint64_t stream);

  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() { return ~uint64_t{0}; }
  uint64_t operator()() { return next(); }
  uint64_t next();

  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer in [0, n), n > 0, via rejection.
  uint64_t below(uint64_t n);
  // Standard normal. Box-Muller in its basic form: u1 in (0, 1], u2 in
  // [0, 1), z0 = sqrt(-2 ln u1) cos(2 pi u2) returned first, then the cached
  // z1 = sqrt(-2 ln u1) sin(2 pi u2).
  double normal();

 private:
  std::array<uint64_t, 4> s_{};
  std::optional<double> spare_normal_;
};

// Fisher-Yates, drawing j = below(i + 1) for i from n-1 down to 1.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    const size_t j = static_cast<size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace mle

#endif  // MLE_RNG_H_
