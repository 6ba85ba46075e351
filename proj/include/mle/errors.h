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

#ifndef MLE_ERRORS_H_
#define MLE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace mle {

// A probability or rate outside the domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Channel probability above 1/2. Callers must flip such channels themselves.
class UnsupportedProbability : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidPermutation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// No subset of the error channels reproduces the syndrome.
class Unsatisfiable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Some activated detector has no incident error channel at all.
class UnsatisfiableSyndrome : public Unsatisfiable {
 public:
  using Unsatisfiable::Unsatisfiable;
};

class TooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace mle

#endif  // MLE_ERRORS_H_
