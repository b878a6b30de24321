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

#ifndef DEVCOMP_EVOLUTION_HPP_
#define DEVCOMP_EVOLUTION_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "development.hpp"
#include "environment.hpp"
#include "rng.hpp"

namespace devcomp {

enum class Treatment { kDc, kControl, kRandomSearch, kReverseDc };

inline constexpr Treatment kAllTreatments[] = {Treatment::kDc, Treatment::kControl,
                                               Treatment::kRandomSearch, Treatment::kReverseDc};

// "dc", "control", "random_search", "reverse_dc".
std::string_view TreatmentName(Treatment t);
std::optional<Treatment> ParseTreatment(std::string_view name);

// True for the two treatments that evolve the full developmental tensor.
bool IsDevelopmental(Treatment t);

struct TreatmentConfig {
  Treatment treatment = Treatment::kDc;
  int env_count = 2;
  int generations = 1500;  // G; developmental treatments execute G/2
  int population_size = 50;
  int horizon = kDefaultHorizon;
  std::uint64_t seed = 0;
  int eval_threads = 1;  // parallel child evaluation; never changes results

  void Validate() const;
  int ExecutedGenerations() const;
  int SimulationsPerIndividual() const;
  std::uint64_t SimulationBudget() const;  // G * P * E
};

using RecordKey = std::pair<int, ScheduleMode>;  // (env index, mode)

struct Individual {
  GenomeTensor genome{1};
  double fitness = 0.0;
  std::map<RecordKey, FitnessRecord> records;
  std::uint64_t id = 0;
  std::uint64_t parent_id = 0;  // 0 for freshly drawn genomes
};

// Every weight of every sheet uniform in [-1, 1].
GenomeTensor RandomGenome(int env_count, Rng& rng);

// Sheets a treatment is allowed to mutate: all of them for dc/reverse_dc,
// only the base for control/random_search.
std::vector<int> MutableSheets(Treatment t, int env_count);

// One weight, chosen uniformly among the mutable sheets, is redrawn from
// Normal(old, |old|) and clamped to [-1, 1].
GenomeTensor Mutate(const GenomeTensor& genome, std::span<const int> mutable_sheets, Rng& rng);

// The (env, mode) pairs a treatment simulates for one individual, in order.
std::vector<RecordKey> EvaluationPlan(Treatment t, int env_count);

// Mode whose records are reported as the non-developmental performance.
ScheduleMode ReportingMode(Treatment t);

// Fills fitness and records. Each simulation bumps *sim_calls when given.
Individual Evaluate(Individual individual, std::span<const EnvironmentSpec> envs,
                    Treatment treatment, const Evaluator& world,
                    std::uint64_t* sim_calls = nullptr);

// Per-generation statistics; exactly what the run CSV stores.
struct GenerationStats {
  int generation = 0;  // 1-based
  double champion_fitness = 0.0;
  std::vector<double> env_nondev;
  double min_env = 0.0;
  double max_env = 0.0;
  double compression_distance = 0.0;
  std::uint64_t sim_calls_cumulative = 0;
};

struct GenerationRecord {
  GenerationStats stats;
  GenomeTensor champion{1};
};

struct RunLog {
  TreatmentConfig config;
  std::vector<GenerationRecord> generations;
  std::uint64_t sim_calls = 0;
};

// Parallel hill climber (or random search). Throws InternalError if the
// simulation counter disagrees with config.SimulationBudget().
RunLog RunTreatment(const TreatmentConfig& config, const Evaluator& world);
RunLog RunTreatment(const TreatmentConfig& config);

}  // namespace devcomp

#endif  // DEVCOMP_EVOLUTION_HPP_
