// Copyright 2026 The devcomp Authors.
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

#ifndef DEVCOMP_ERROR_HPP_
#define DEVCOMP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace devcomp {

// A caller broke a documented precondition (bad dimension, out-of-range
// index, non-finite weight, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// File system trouble; the message always names the offending path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A self-check failed (e.g. the simulation budget counter disagrees with the
// configured budget). Never expected in a correct build.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Prefer the const char* form on hot paths; build dynamic messages only
// inside an explicit `if (!cond) throw ...`.
inline void Require(bool condition, const char* message) {
  if (!condition) throw ContractViolation(message);
}

inline void Require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace devcomp

#endif  // DEVCOMP_ERROR_HPP_
