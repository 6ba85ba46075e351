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

#include "mle/bitvec.h"

#include <cassert>

namespace mle {

bool BitVec::any() const {
  for (uint64_t w : words_) {
    if (w) return true;
  }
  return false;
}

size_t BitVec::count() const {
  size_t total = 0;
  for (uint64_t w : words_) total += static_cast<size_t>(std::popcount(w));
  return total;
}

BitVec& BitVec::operator^=(const BitVec& other) {
  assert(other.num_bits_ == num_bits_);
  for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVec& BitVec::operator|=(const BitVec& other) {
  assert(other.num_bits_ == num_bits_);
  for (size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

std::vector<size_t> BitVec::set_indices() const {
  std::vector<size_t> out;
  for_each_set([&](size_t k) { out.push_back(k); });
  return out;
}

std::string BitVec::to_01() const {
  std::string s(num_bits_, '0');
  for_each_set([&](size_t k) { s[k] = '1'; });
  return s;
}

size_t BitVec::hash() const {
  // splitmix-style finalizer folded over the words.
  uint64_t h = 0x9E3779B97F4A7C15ULL ^ num_bits_;
  for (uint64_t w : words_) {
    h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h ^= h >> 30;
    h *= 0xBF58476D1CE4E5B9ULL;
    h ^= h >> 27;
  }
  return static_cast<size_t>(h);
}

}  // namespace mle
