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

#ifndef MLE_BITVEC_H_
#define MLE_BITVEC_H_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace mle {

// Fixed-length bit vector packed into 64-bit words. Used for residual
// detection sets, forbidden-error sets and observable masks.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(size_t num_bits)
      : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {}

  size_t size() const { return num_bits_; }
  size_t num_words() const { return words_.size(); }
  const std::vector<uint64_t>& words() const { return words_; }

  bool get(size_t k) const { return (words_[k >> 6] >> (k & 63)) & 1; }
  void set(size_t k) { words_[k >> 6] |= uint64_t{1} << (k & 63); }
  void reset(size_t k) { words_[k >> 6] &= ~(uint64_t{1} << (k & 63)); }
  void flip(size_t k) { words_[k >> 6] ^= uint64_t{1} << (k & 63); }

  bool any() const;
  bool none() const { return !any(); }
  size_t count() const;

  // Both operands must have the same length.
  BitVec& operator^=(const BitVec& other);
  BitVec& operator|=(const BitVec& other);

  // Calls fn(index) for every set bit in increasing order.
  template <typename Fn>
  void for_each_set(Fn&& fn) const {
    for (size_t w = 0; w < words_.size(); ++w) {
      uint64_t bits = words_[w];
      while (bits) {
        fn(w * 64 + static_cast<size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<size_t> set_indices() const;

  // '0'/'1' characters, bit 0 first.
  std::string to_01() const;

  size_t hash() const;

  bool operator==(const BitVec&) const = default;

 private:
  size_t num_bits_ = 0;
  std::vector<uint64_t> words_;
};

inline BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

struct BitVecHash {
  size_t operator()(const BitVec& b) const { return b.hash(); }
};

}  // namespace mle

#endif  // MLE_BITVEC_H_
