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

#ifndef MLE_SHOTS_IO_H_
#define MLE_SHOTS_IO_H_

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mle/bitvec.h"
#include "mle/model.h"
#include "mle/search.h"

namespace mle {

// Line-oriented shot files. A trailing newline does not start a new shot;
// '\r' before '\n' is ignored.
//
//   dets: whitespace-separated D<k> tokens per line, blank line = no events
//   b01:  exactly num_detectors '0'/'1' characters per line
enum class ShotFormat { kDets, kB01 };

class ShotFormatError : public std::runtime_error {
 public:
  ShotFormatError(size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

ShotFormat parse_shot_format(std::string_view name);

std::vector<Syndrome> parse_shots(std::string_view text, ShotFormat format,
                                  size_t num_detectors);
std::string format_shots(std::span<const Syndrome> shots, ShotFormat format,
                         size_t num_detectors);

// One line per shot of num_observables '0'/'1' characters.
std::vector<BitVec> parse_observable_lines(std::string_view text,
                                           size_t num_observables);

inline constexpr std::string_view kLowConfidenceToken = "LOW_CONFIDENCE";

// The predicted observables as '0'/'1', or LOW_CONFIDENCE. No newline.
std::string format_prediction(const DecodeOutcome& outcome);

}  // namespace mle

#endif  // MLE_SHOTS_IO_H_
