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

#include "environment.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "error.hpp"
#include "format.hpp"

namespace devcomp {

namespace {

constexpr std::size_t HipMotor(std::size_t leg) { return 2 * leg; }
constexpr std::size_t KneeMotor(std::size_t leg) { return 2 * leg + 1; }

}  // namespace

std::vector<EnvironmentSpec> StandardEnvironments(int env_count, int horizon) {
  Require(env_count >= 1 && env_count <= 4,
          "StandardEnvironments: env_count must be in [1, 4], got " + std::to_string(env_count));
  Require(horizon >= 2, "StandardEnvironments: horizon must be >= 2");
  static constexpr Vec2 kPlacements[] = {
      {0.0, kLightDistance}, {0.0, -kLightDistance}, {kLightDistance, 0.0}, {-kLightDistance, 0.0}};
  std::vector<EnvironmentSpec> envs;
  for (int e = 0; e < env_count; ++e) {
    envs.push_back({kPlacements[e], horizon, e + 1});
  }
  return envs;
}

double LightIntensity(Vec2 position, const EnvironmentSpec& spec) {
  const double d = std::hypot(position.x - spec.light_position.x,
                              position.y - spec.light_position.y);
  const double r = std::max(d, kMinLightDistance);
  return 1.0 / (r * r);
}

SensorVector ReadSensors(const WorldState& state, const EnvironmentSpec& spec) {
  SensorVector s;
  for (std::size_t k = 0; k < 4; ++k) s.touch[k] = state.stance[k] ? 1.0 : -1.0;
  s.light = LightIntensity(state.position, spec);
  return s;
}

WorldState StepDynamics(const WorldState& state, const MotorState& new_motors) {
  WorldState next = state;
  std::array<double, 4> push{};
  for (std::size_t leg = 0; leg < 4; ++leg) {
    const double hip = new_motors.values[HipMotor(leg)];
    next.stance[leg] = new_motors.values[KneeMotor(leg)] <= 0.0;
    push[leg] = next.stance[leg] ? hip - state.prev_hip[leg] : 0.0;
    next.prev_hip[leg] = hip;
  }
  const double speed = kSpeedGain * (push[0] + push[1] + push[2] + push[3]);
  const double turn = kTurnGain * (push[kFrontLeft] + push[kBackLeft] -
                                   push[kFrontRight] - push[kBackRight]);
  next.heading = state.heading + turn;
  next.position.x = state.position.x + speed * std::sin(next.heading);
  next.position.y = state.position.y + speed * std::cos(next.heading);
  next.motors = new_motors;
  next.time = state.time + 1;
  return next;
}

double MeanLight(const std::vector<double>& per_step_light) {
  Require(!per_step_light.empty(), "MeanLight: empty trace");
  const double first = per_step_light.front();
  double offset = 0.0;
  for (double p : per_step_light) offset += p - first;
  return first + offset / static_cast<double>(per_step_light.size());
}

FitnessRecord Simulate(const DevelopmentSchedule& schedule, const EnvironmentSpec& spec,
                       const StepObserver& observer) {
  Require(schedule.horizon() == spec.horizon,
          "Simulate: schedule horizon " + std::to_string(schedule.horizon()) +
              " does not match environment horizon " + std::to_string(spec.horizon));
  WorldState state;
  FitnessRecord record;
  record.per_step_light.reserve(static_cast<std::size_t>(spec.horizon));
  for (int t = 0; t < spec.horizon; ++t) {
    const SynapseMatrix weights = MatrixAtTime(schedule, t);
    const SensorVector sensors = ReadSensors(state, spec);
    const MotorState motors = MotorUpdate(state.motors, sensors, weights);
    state = StepDynamics(state, motors);
    const double light = LightIntensity(state.position, spec);
    record.per_step_light.push_back(light);
    if (observer) observer(StepTrace{t, weights, sensors, state, light});
  }
  record.mean_light = MeanLight(record.per_step_light);
  return record;
}

void WriteTrajectoryCsv(std::ostream& out, const DevelopmentSchedule& schedule,
                        const EnvironmentSpec& spec) {
  out << "t,x,y,theta,light,touch_FL,touch_FR,touch_BL,touch_BR";
  for (std::size_t i = 1; i <= kMotorCount; ++i) out << ",m" << i;
  out << '\n';
  Simulate(schedule, spec, [&out](const StepTrace& s) {
    out << s.t << ',' << FormatDouble(s.state.position.x) << ','
        << FormatDouble(s.state.position.y) << ',' << FormatDouble(s.state.heading) << ','
        << FormatDouble(s.light);
    for (bool contact : s.state.stance) out << ',' << (contact ? 1 : -1);
    for (double m : s.state.motors.values) out << ',' << FormatDouble(m);
    out << '\n';
  });
}

}  // namespace devcomp
