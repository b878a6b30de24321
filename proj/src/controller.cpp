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

#include "controller.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace devcomp {

namespace {

void CheckWeight(double w) {
  if (!(w >= -1.0 && w <= 1.0)) {
    throw ContractViolation("synaptic weight outside [-1, 1]: " + std::to_string(w));
  }
}

}  // namespace

double ClampWeight(double w) {
  Require(std::isfinite(w), "ClampWeight: non-finite weight");
  return std::min(1.0, std::max(-1.0, w));
}

SynapseMatrix::SynapseMatrix(const Storage& row_major) : weights_(row_major) {
  for (double w : weights_) CheckWeight(w);
}

SynapseMatrix SynapseMatrix::Filled(double w) {
  CheckWeight(w);
  SynapseMatrix m;
  m.weights_.fill(w);
  return m;
}

double SynapseMatrix::at(std::size_t sensor, std::size_t motor) const {
  Require(sensor < kSensorCount && motor < kMotorCount,
          "SynapseMatrix index out of range");
  return weights_[sensor * kMotorCount + motor];
}

void SynapseMatrix::set(std::size_t sensor, std::size_t motor, double w) {
  Require(sensor < kSensorCount && motor < kMotorCount,
          "SynapseMatrix index out of range");
  set_flat(sensor * kMotorCount + motor, w);
}

void SynapseMatrix::set_flat(std::size_t k, double w) {
  Require(k < kSynapseCount, "SynapseMatrix flat index out of range");
  CheckWeight(w);
  weights_[k] = w;
}

MotorState MotorUpdate(const MotorState& prev, const SensorVector& sensors,
                       const SynapseMatrix& weights) {
  const auto s = sensors.values();
  MotorState next;
  next.tau = prev.tau;
  for (std::size_t i = 0; i < kMotorCount; ++i) {
    double drive = 0.0;
    for (std::size_t j = 0; j < kSensorCount; ++j) {
      drive += weights.flat(j * kMotorCount + i) * s[j];
    }
    next.values[i] = std::tanh(prev.values[i] + prev.tau * drive);
  }
  return next;
}

MotorState MotorUpdate(const MotorState& prev, std::span<const double> sensors,
                       const SynapseMatrix& weights) {
  Require(sensors.size() == kSensorCount,
          "MotorUpdate: expected 5 sensor values, got " + std::to_string(sensors.size()));
  SensorVector s;
  std::copy_n(sensors.begin(), 4, s.touch.begin());
  s.light = sensors[kLight];
  return MotorUpdate(prev, s, weights);
}

}  // namespace devcomp
