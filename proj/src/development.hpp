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

// Linear lifetime development of controller weights.
//
// A genome is a stack of E+1 weight sheets. Sheet 0 is the shared base
// controller; sheet e is the target the base develops toward while the robot
// lives in environment e. Weights at time step t of a T-step lifetime are
//
//   w(t) = ((T-1-t) * base + t * target) / (T-1),
//
// so the robot starts as the base controller and ends as the target.

#ifndef DEVCOMP_DEVELOPMENT_HPP_
#define DEVCOMP_DEVELOPMENT_HPP_

#include <functional>
#include <string_view>
#include <vector>

#include "controller.hpp"

namespace devcomp {

class GenomeTensor {
 public:
  // All-zero genome with env_count targets (env_count >= 1).
  explicit GenomeTensor(int env_count);
  // sheets.size() must be at least 2.
  explicit GenomeTensor(std::vector<SynapseMatrix> sheets);

  int env_count() const { return static_cast<int>(sheets_.size()) - 1; }
  int sheet_count() const { return static_cast<int>(sheets_.size()); }

  const SynapseMatrix& sheet(int k) const;
  SynapseMatrix& sheet(int k);
  const SynapseMatrix& base() const { return sheets_.front(); }

  friend bool operator==(const GenomeTensor&, const GenomeTensor&) = default;

 private:
  std::vector<SynapseMatrix> sheets_;
};

enum class ScheduleMode {
  kDevelopmental,         // base = sheet 0, target = sheet e
  kNonDevelopmental,      // base = target = sheet 0
  kReverseDevelopmental,  // base = sheet e, target = sheet 0
  kStatic,                // control genome; base = target = sheet 0
};

std::string_view ScheduleModeName(ScheduleMode mode);

// Borrowed view of two endpoint matrices; the genome must outlive it.
class DevelopmentSchedule {
 public:
  DevelopmentSchedule(const SynapseMatrix& base, const SynapseMatrix& target,
                      int horizon);

  const SynapseMatrix& base() const { return base_.get(); }
  const SynapseMatrix& target() const { return target_.get(); }
  int horizon() const { return horizon_; }
  bool degenerate() const { return degenerate_; }

 private:
  std::reference_wrapper<const SynapseMatrix> base_;
  std::reference_wrapper<const SynapseMatrix> target_;
  int horizon_;
  bool degenerate_;
};

// Closed-form interpolation for one synapse. Requires 0 <= t <= T-1, T >= 2.
// Endpoints are returned bit-exactly and the result never leaves the closed
// interval between the two weights.
double InterpolatedWeight(double base_w, double target_w, int t, int horizon);

// Weight matrix in effect at development step t. A degenerate schedule
// returns its single matrix for every t.
SynapseMatrix MatrixAtTime(const DevelopmentSchedule& schedule, int t);

// Picks base/target sheets for environment env_index (1-based).
DevelopmentSchedule ScheduleFor(const GenomeTensor& genome, int env_index,
                                ScheduleMode mode, int horizon);

}  // namespace devcomp

#endif  // DEVCOMP_DEVELOPMENT_HPP_
