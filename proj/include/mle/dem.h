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

#ifndef MLE_DEM_H_
#define MLE_DEM_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mle/model.h"

namespace mle {

// Detector error model text format.
//
//   error(p) D0 D1 L0 ^ D2     # '^' splits into separately recorded channels
//   detector(x, y, t) D3       # coordinates are optional
//   logical_observable L0
//   shift_detectors(0, 0, 1) 4
//   repeat 3 { ... }
//
// Instructions are separated by newlines or braces; '#' comments run to the
// end of the line. Instruction names are case-insensitive.

struct DemTarget {
  enum class Kind : uint8_t { kDetector, kObservable, kSeparator };
  Kind kind = Kind::kDetector;
  uint64_t value = 0;

  static DemTarget detector(uint64_t k) { return {Kind::kDetector, k}; }
  static DemTarget observable(uint64_t k) { return {Kind::kObservable, k}; }
  static DemTarget separator() { return {Kind::kSeparator, 0}; }

  bool operator==(const DemTarget&) const = default;
};

struct DemInstruction {
  enum class Kind : uint8_t {
    kError,
    kDetector,
    kLogicalObservable,
    kShiftDetectors,
    kRepeat,
  };
  Kind kind = Kind::kError;
  // error: {p}; detector/shift_detectors: coordinates.
  std::vector<double> args;
  // error/detector/logical_observable targets. shift_detectors stores its
  // offset in repeat_count.
  std::vector<DemTarget> targets;
  uint64_t repeat_count = 0;
  std::vector<DemInstruction> body;

  bool operator==(const DemInstruction&) const = default;
};

struct DemProgram {
  std::vector<DemInstruction> instructions;
  bool operator==(const DemProgram&) const = default;
};

class DemParseError : public std::runtime_error {
 public:
  enum class Kind {
    kSyntax,
    kProbabilityOutOfRange,
    kMalformedTarget,
    kUnsupportedInstruction,
  };
  DemParseError(Kind kind, size_t line, size_t column, const std::string& what);

  Kind kind() const { return kind_; }
  size_t line() const { return line_; }
  size_t column() const { return column_; }

 private:
  Kind kind_;
  size_t line_;
  size_t column_;
};

// Throws DemParseError. Never crashes on arbitrary bytes.
DemProgram parse_dem(std::string_view text);

// Canonical text: one instruction per line, four-space indentation inside
// repeat blocks, shortest round-trip decimal for every real.
std::string serialize_dem(const DemProgram& program);

// Unrolls repeats and applies detector shifts. Channels appear in textual
// order; each '^'-separated component becomes its own channel. Repeated
// targets within a component cancel. Throws TooLarge if the unrolled model
// would exceed the internal index/size limits.
ErrorModel instantiate(const DemProgram& program);

// Writes a model back as a flat program: detector lines for declared
// coordinates (and for the highest detector when it is otherwise unused),
// then one error line per channel.
DemProgram to_program(const ErrorModel& model);

}  // namespace mle

#endif  // MLE_DEM_H_
