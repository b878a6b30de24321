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

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "controller.hpp"
#include "doctest.h"
#include "error.hpp"
#include "oracles.hpp"

using namespace devcomp;

TEST_CASE("MotorUpdate: zero state and zero sensors stay at rest") {
  MotorState prev;
  SensorVector s;
  s.touch = {0.0, 0.0, 0.0, 0.0};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  SynapseMatrix w;
  for (std::size_t k = 0; k < kSynapseCount; ++k) w.set_flat(k, u(rng));
  const auto next = MotorUpdate(prev, s, w);
  for (double m : next.values) CHECK(m == 0.0);
}

TEST_CASE("MotorUpdate: single synapse example") {
  MotorState prev;
  SynapseMatrix w;
  w.set(kTouchFrontLeft, 0, 1.0);
  SensorVector s;
  s.touch = {1.0, 0.0, 0.0, 0.0};
  const auto next = MotorUpdate(prev, s, w);
  CHECK(next.values[0] == doctest::Approx(0.2913126124515909).epsilon(1e-15));
  for (std::size_t i = 1; i < kMotorCount; ++i) CHECK(next.values[i] == 0.0);
}

TEST_CASE("MotorUpdate: momentum plus five saturated synapses") {
  MotorState prev;
  prev.values[0] = 0.9;
  SynapseMatrix w;
  for (std::size_t j = 0; j < kSensorCount; ++j) w.set(j, 0, 1.0);
  SensorVector s;
  s.touch = {1, 1, 1, 1};
  s.light = 1.0;
  const auto next = MotorUpdate(prev, s, w);
  CHECK(next.values[0] == doctest::Approx(0.9836748576936802).epsilon(1e-15));
  CHECK(prev.values[0] == 0.9);
}

TEST_CASE("MotorUpdate agrees with the scalar formula on random inputs") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    SynapseMatrix w;
    for (std::size_t k = 0; k < kSynapseCount; ++k) w.set_flat(k, u(rng));
    MotorState prev;
    for (auto& m : prev.values) m = 0.999 * u(rng);
    SensorVector s;
    for (auto& t : s.touch) t = u(rng) < 0 ? -1.0 : 1.0;
    s.light = std::abs(u(rng)) * 4.0;
    const auto next = MotorUpdate(prev, s, w);
    const auto sv = s.values();
    for (std::size_t i = 0; i < kMotorCount; ++i) {
      std::vector<double> col;
      for (std::size_t j = 0; j < kSensorCount; ++j) col.push_back(w.at(j, i));
      const double want = oracle::MotorScalar(prev.values[i], 0.3, col,
                                              std::vector<double>(sv.begin(), sv.end()));
      CHECK(next.values[i] == doctest::Approx(want).epsilon(1e-14));
      CHECK(std::abs(next.values[i]) < 1.0);
    }
  }
}

TEST_CASE("MotorUpdate: zero weights give tanh of the previous state") {
  MotorState prev;
  prev.values = {0.5, -0.5, 0.1, -0.9, 0.0, 0.3, 0.7, -0.2};
  SensorVector s;
  s.light = 3.0;
  const auto next = MotorUpdate(prev, s, SynapseMatrix{});
  for (std::size_t i = 0; i < kMotorCount; ++i) CHECK(next.values[i] == std::tanh(prev.values[i]));
}

TEST_CASE("MotorUpdate: deterministic") {
  SynapseMatrix w = SynapseMatrix::Filled(0.37);
  MotorState prev;
  prev.values[3] = 0.2;
  SensorVector s;
  s.light = 0.001;
  const auto a = MotorUpdate(prev, s, w);
  const auto b = MotorUpdate(prev, s, w);
  CHECK(a.values == b.values);
}

TEST_CASE("MotorUpdate: raw sensor span must have five entries") {
  const std::vector<double> four{1, 1, 1, 1};
  CHECK_THROWS_AS(MotorUpdate(MotorState{}, four, SynapseMatrix{}), ContractViolation);
  const std::vector<double> five{1, 1, 1, 1, 0.5};
  CHECK_NOTHROW(MotorUpdate(MotorState{}, five, SynapseMatrix{}));
}

TEST_CASE("ClampWeight") {
  CHECK(ClampWeight(0.5) == 0.5);
  CHECK(ClampWeight(1.7) == 1.0);
  CHECK(ClampWeight(-2.3) == -1.0);
  CHECK_THROWS_AS(ClampWeight(std::numeric_limits<double>::quiet_NaN()), ContractViolation);
  CHECK_THROWS_AS(ClampWeight(std::numeric_limits<double>::infinity()), ContractViolation);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 1000; ++i) {
    const double w = u(rng);
    CHECK(ClampWeight(ClampWeight(w)) == ClampWeight(w));
  }
}

TEST_CASE("SynapseMatrix rejects out-of-range weights") {
  SynapseMatrix w;
  CHECK_THROWS_AS(w.set(0, 0, 1.5), ContractViolation);
  CHECK_THROWS_AS(w.set(5, 0, 0.0), ContractViolation);
  CHECK_THROWS_AS(w.set(0, 8, 0.0), ContractViolation);
  CHECK_THROWS_AS(w.set_flat(0, std::numeric_limits<double>::quiet_NaN()), ContractViolation);
  CHECK_THROWS_AS(SynapseMatrix::Filled(-1.01), ContractViolation);
  w.set(4, 7, -1.0);
  CHECK(w.at(4, 7) == -1.0);
  CHECK(w.flat(4 * kMotorCount + 7) == -1.0);
}
