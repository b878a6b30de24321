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

// Phototaxis task environments and the deterministic quadruped surrogate.
//
// The surrogate is a kinematic stand-in for a rigid-body simulation. Motor
// layout is [hip_FL, knee_FL, hip_FR, knee_FR, hip_BL, knee_BL, hip_BR,
// knee_BR]. A leg is in stance while its knee motor is <= 0; a stance leg
// pushes the body by the change of its hip motor since the previous step.
// Left-leg pushes increase the heading and right-leg pushes decrease it.

#ifndef DEVCOMP_ENVIRONMENT_HPP_
#define DEVCOMP_ENVIRONMENT_HPP_

#include <array>
#include <functional>
#include <iosfwd>
#include <vector>

#include "controller.hpp"
#include "development.hpp"

namespace devcomp {

inline constexpr double kLightDistance = 30.0;   // body lengths
inline constexpr double kMinLightDistance = 0.5; // inverse-square floor
inline constexpr double kSpeedGain = 0.05;       // body lengths per unit hip change
inline constexpr double kTurnGain = 0.25;        // radians per unit hip change
inline constexpr int kDefaultHorizon = 1000;

enum Leg : std::size_t { kFrontLeft = 0, kFrontRight = 1, kBackLeft = 2, kBackRight = 3 };

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct EnvironmentSpec {
  Vec2 light_position{0.0, kLightDistance};
  int horizon = kDefaultHorizon;
  int index = 1;  // 1-based
};

// Light placements for E environments, all 30 body lengths from the origin:
// +y, -y, +x, -x in that order. Supports 1 <= env_count <= 4.
std::vector<EnvironmentSpec> StandardEnvironments(int env_count, int horizon);

struct WorldState {
  Vec2 position;
  double heading = 0.0;  // radians, 0 faces +y
  MotorState motors;
  std::array<double, 4> prev_hip{};
  std::array<bool, 4> stance{true, true, true, true};
  int time = 0;
};

struct FitnessRecord {
  std::vector<double> per_step_light;
  double mean_light = 0.0;
};

double LightIntensity(Vec2 position, const EnvironmentSpec& spec);

SensorVector ReadSensors(const WorldState& state, const EnvironmentSpec& spec);

// Advances the body one step given freshly updated motor values.
WorldState StepDynamics(const WorldState& state, const MotorState& new_motors);

// Mean of a light trace, computed as first + mean(x - first). Constant traces
// come back bit-exact, which the plain sum/T does not guarantee.
double MeanLight(const std::vector<double>& per_step_light);

// Everything an observer may want to see after each simulated step.
struct StepTrace {
  int t = 0;
  const SynapseMatrix& weights;  // weights used during step t
  const SensorVector& sensors;   // sensors read before the motor update
  const WorldState& state;       // state after the step
  double light = 0.0;            // p_t, read at the new position
};

using StepObserver = std::function<void(const StepTrace&)>;

// Runs one lifetime. Requires schedule.horizon() == spec.horizon.
FitnessRecord Simulate(const DevelopmentSchedule& schedule, const EnvironmentSpec& spec,
                       const StepObserver& observer = {});

// Evaluation backend used by the evolutionary loop. The surrogate is the
// reference implementation; other worlds can be slotted in behind this.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual FitnessRecord Simulate(const DevelopmentSchedule& schedule,
                                 const EnvironmentSpec& spec) const = 0;
};

class SurrogateWorld final : public Evaluator {
 public:
  FitnessRecord Simulate(const DevelopmentSchedule& schedule,
                         const EnvironmentSpec& spec) const override {
    return devcomp::Simulate(schedule, spec);
  }
};

// Header row plus one line per step:
// t,x,y,theta,light,touch_FL,touch_FR,touch_BL,touch_BR,m1..m8
void WriteTrajectoryCsv(std::ostream& out, const DevelopmentSchedule& schedule,
                        const EnvironmentSpec& spec);

}  // namespace devcomp

#endif  // DEVCOMP_ENVIRONMENT_HPP_
