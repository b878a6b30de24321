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

// Sensor-to-motor controller: five sensors fully connected to eight motor
// neurons, no hidden layer.

#ifndef DEVCOMP_CONTROLLER_HPP_
#define DEVCOMP_CONTROLLER_HPP_

#include <array>
#include <cstddef>
#include <span>

namespace devcomp {

inline constexpr std::size_t kSensorCount = 5;
inline constexpr std::size_t kMotorCount = 8;
inline constexpr std::size_t kSynapseCount = kSensorCount * kMotorCount;
inline constexpr double kDefaultTau = 0.3;

// Sensor order used everywhere: touch FL, FR, BL, BR, then light.
enum SensorIndex : std::size_t {
  kTouchFrontLeft = 0,
  kTouchFrontRight = 1,
  kTouchBackLeft = 2,
  kTouchBackRight = 3,
  kLight = 4,
};

// Returns w limited to [-1, 1]. Throws ContractViolation on NaN/inf.
double ClampWeight(double w);

// 5x8 weight grid; row = sensor, column = motor. Every entry stays in
// [-1, 1]; setters reject anything outside.
class SynapseMatrix {
 public:
  using Storage = std::array<double, kSynapseCount>;

  SynapseMatrix() { weights_.fill(0.0); }
  explicit SynapseMatrix(const Storage& row_major);
  static SynapseMatrix Filled(double w);

  double at(std::size_t sensor, std::size_t motor) const;
  void set(std::size_t sensor, std::size_t motor, double w);

  // Flat row-major view, index = sensor * kMotorCount + motor.
  double flat(std::size_t k) const { return weights_[k]; }
  void set_flat(std::size_t k, double w);
  const Storage& data() const { return weights_; }

  friend bool operator==(const SynapseMatrix&, const SynapseMatrix&) = default;

 private:
  Storage weights_;
};

struct SensorVector {
  std::array<double, 4> touch{1.0, 1.0, 1.0, 1.0};  // each -1 or +1
  double light = 0.0;

  std::array<double, kSensorCount> values() const {
    return {touch[0], touch[1], touch[2], touch[3], light};
  }
};

struct MotorState {
  std::array<double, kMotorCount> values{};
  double tau = kDefaultTau;
};

// m_i <- tanh(m_i + tau * sum_j w_ji * s_j). The previous state is untouched.
MotorState MotorUpdate(const MotorState& prev, const SensorVector& sensors,
                       const SynapseMatrix& weights);

// Same update for callers holding raw sensor arrays; the length must be 5.
MotorState MotorUpdate(const MotorState& prev, std::span<const double> sensors,
                       const SynapseMatrix& weights);

}  // namespace devcomp

#endif  // DEVCOMP_CONTROLLER_HPP_
