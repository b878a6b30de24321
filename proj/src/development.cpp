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

#include "development.hpp"

#include <algorithm>
#include <string>

#include "error.hpp"

namespace devcomp {

GenomeTensor::GenomeTensor(int env_count) {
  Require(env_count >= 1, "GenomeTensor: env_count must be >= 1");
  sheets_.resize(static_cast<std::size_t>(env_count) + 1);
}

GenomeTensor::GenomeTensor(std::vector<SynapseMatrix> sheets)
    : sheets_(std::move(sheets)) {
  Require(sheets_.size() >= 2, "GenomeTensor: need a base sheet and at least one target");
}

const SynapseMatrix& GenomeTensor::sheet(int k) const {
  if (k < 0 || k >= sheet_count()) {
    throw ContractViolation("GenomeTensor: sheet index " + std::to_string(k) + " out of range");
  }
  return sheets_[static_cast<std::size_t>(k)];
}

SynapseMatrix& GenomeTensor::sheet(int k) {
  if (k < 0 || k >= sheet_count()) {
    throw ContractViolation("GenomeTensor: sheet index " + std::to_string(k) + " out of range");
  }
  return sheets_[static_cast<std::size_t>(k)];
}

std::string_view ScheduleModeName(ScheduleMode mode) {
  switch (mode) {
    case ScheduleMode::kDevelopmental: return "developmental";
    case ScheduleMode::kNonDevelopmental: return "non_developmental";
    case ScheduleMode::kReverseDevelopmental: return "reverse_developmental";
    case ScheduleMode::kStatic: return "static";
  }
  throw ContractViolation("unknown schedule mode");
}

DevelopmentSchedule::DevelopmentSchedule(const SynapseMatrix& base,
                                         const SynapseMatrix& target, int horizon)
    : base_(base), target_(target), horizon_(horizon), degenerate_(base == target) {
  Require(horizon >= (degenerate_ ? 1 : 2),
          "DevelopmentSchedule: horizon too short (" + std::to_string(horizon) + ")");
}

double InterpolatedWeight(double base_w, double target_w, int t, int horizon) {
  Require(horizon >= 2, "InterpolatedWeight: horizon must be >= 2");
  if (t < 0 || t > horizon - 1) {
    throw ContractViolation("InterpolatedWeight: t=" + std::to_string(t) + " outside [0, " +
                            std::to_string(horizon - 1) + "]");
  }
  if (t == 0 || base_w == target_w) return base_w;
  if (t == horizon - 1) return target_w;
  const double span = horizon - 1;
  const double w = ((span - t) * base_w + t * target_w) / span;
  // Rounding can push the quotient one ulp past an endpoint.
  return std::clamp(w, std::min(base_w, target_w), std::max(base_w, target_w));
}

SynapseMatrix MatrixAtTime(const DevelopmentSchedule& schedule, int t) {
  if (t < 0 || t >= schedule.horizon()) {
    throw ContractViolation("MatrixAtTime: t=" + std::to_string(t) +
                            " outside the schedule horizon");
  }
  if (schedule.degenerate()) return schedule.base();
  SynapseMatrix::Storage w;
  const auto& b = schedule.base().data();
  const auto& g = schedule.target().data();
  for (std::size_t k = 0; k < kSynapseCount; ++k) {
    w[k] = InterpolatedWeight(b[k], g[k], t, schedule.horizon());
  }
  return SynapseMatrix(w);
}

DevelopmentSchedule ScheduleFor(const GenomeTensor& genome, int env_index,
                                ScheduleMode mode, int horizon) {
  Require(env_index >= 1 && env_index <= genome.env_count(),
          "ScheduleFor: environment index " + std::to_string(env_index) + " out of range");
  switch (mode) {
    case ScheduleMode::kDevelopmental:
      return {genome.sheet(0), genome.sheet(env_index), horizon};
    case ScheduleMode::kReverseDevelopmental:
      return {genome.sheet(env_index), genome.sheet(0), horizon};
    case ScheduleMode::kNonDevelopmental:
    case ScheduleMode::kStatic:
      return {genome.sheet(0), genome.sheet(0), horizon};
  }
  throw ContractViolation("ScheduleFor: unknown schedule mode");
}

}  // namespace devcomp
