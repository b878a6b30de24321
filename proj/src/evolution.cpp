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

#include "evolution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "analysis.hpp"
#include "error.hpp"

namespace devcomp {

std::string_view TreatmentName(Treatment t) {
  switch (t) {
    case Treatment::kDc: return "dc";
    case Treatment::kControl: return "control";
    case Treatment::kRandomSearch: return "random_search";
    case Treatment::kReverseDc: return "reverse_dc";
  }
  throw ContractViolation("unknown treatment");
}

std::optional<Treatment> ParseTreatment(std::string_view name) {
  for (Treatment t : kAllTreatments) {
    if (TreatmentName(t) == name) return t;
  }
  return std::nullopt;
}

bool IsDevelopmental(Treatment t) {
  return t == Treatment::kDc || t == Treatment::kReverseDc;
}

void TreatmentConfig::Validate() const {
  Require(env_count >= 1 && env_count <= 4, "env_count must be in [1, 4]");
  Require(generations >= 2 && generations % 2 == 0,
          "generations must be even and >= 2, got " + std::to_string(generations));
  Require(population_size >= 1, "population_size must be >= 1");
  Require(horizon >= 2, "horizon must be >= 2");
  Require(eval_threads >= 1, "eval_threads must be >= 1");
}

int TreatmentConfig::ExecutedGenerations() const {
  return IsDevelopmental(treatment) ? generations / 2 : generations;
}

int TreatmentConfig::SimulationsPerIndividual() const {
  return IsDevelopmental(treatment) ? 2 * env_count : env_count;
}

std::uint64_t TreatmentConfig::SimulationBudget() const {
  return static_cast<std::uint64_t>(generations) * static_cast<std::uint64_t>(population_size) *
         static_cast<std::uint64_t>(env_count);
}

GenomeTensor RandomGenome(int env_count, Rng& rng) {
  GenomeTensor genome(env_count);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  for (int k = 0; k < genome.sheet_count(); ++k) {
    for (std::size_t i = 0; i < kSynapseCount; ++i) genome.sheet(k).set_flat(i, uniform(rng));
  }
  return genome;
}

std::vector<int> MutableSheets(Treatment t, int env_count) {
  if (!IsDevelopmental(t)) return {0};
  std::vector<int> sheets(static_cast<std::size_t>(env_count) + 1);
  for (int k = 0; k <= env_count; ++k) sheets[static_cast<std::size_t>(k)] = k;
  return sheets;
}

GenomeTensor Mutate(const GenomeTensor& genome, std::span<const int> mutable_sheets, Rng& rng) {
  Require(!mutable_sheets.empty(), "Mutate: no mutable sheets");
  for (int k : mutable_sheets) {
    Require(k >= 0 && k < genome.sheet_count(), "Mutate: sheet index out of range");
  }
  const std::size_t positions = mutable_sheets.size() * kSynapseCount;
  std::uniform_int_distribution<std::size_t> pick(0, positions - 1);
  const std::size_t slot = pick(rng);
  const int sheet = mutable_sheets[slot / kSynapseCount];
  const std::size_t synapse = slot % kSynapseCount;

  GenomeTensor child = genome;
  const double old_w = genome.sheet(sheet).flat(synapse);
  double new_w = old_w;
  if (old_w != 0.0) {
    std::normal_distribution<double> gauss(old_w, std::abs(old_w));
    new_w = ClampWeight(gauss(rng));
  }
  child.sheet(sheet).set_flat(synapse, new_w);
  return child;
}

std::vector<RecordKey> EvaluationPlan(Treatment t, int env_count) {
  std::vector<RecordKey> plan;
  for (int e = 1; e <= env_count; ++e) {
    switch (t) {
      case Treatment::kControl:
      case Treatment::kRandomSearch:
        plan.emplace_back(e, ScheduleMode::kStatic);
        break;
      case Treatment::kDc:
        plan.emplace_back(e, ScheduleMode::kDevelopmental);
        plan.emplace_back(e, ScheduleMode::kNonDevelopmental);
        break;
      case Treatment::kReverseDc:
        plan.emplace_back(e, ScheduleMode::kReverseDevelopmental);
        plan.emplace_back(e, ScheduleMode::kNonDevelopmental);
        break;
    }
  }
  return plan;
}

ScheduleMode ReportingMode(Treatment t) {
  return IsDevelopmental(t) ? ScheduleMode::kNonDevelopmental : ScheduleMode::kStatic;
}

Individual Evaluate(Individual individual, std::span<const EnvironmentSpec> envs,
                    Treatment treatment, const Evaluator& world, std::uint64_t* sim_calls) {
  const int env_count = static_cast<int>(envs.size());
  Require(env_count >= 1, "Evaluate: no environments");
  Require(env_count <= individual.genome.env_count(),
          "Evaluate: more environments than genome targets");
  if (IsDevelopmental(treatment)) {
    Require(env_count == individual.genome.env_count(),
            "Evaluate: developmental genome must have one target per environment");
  }
  individual.fitness = 0.0;
  individual.records.clear();
  for (const auto& [env, mode] : EvaluationPlan(treatment, env_count)) {
    const EnvironmentSpec& spec = envs[static_cast<std::size_t>(env - 1)];
    FitnessRecord record =
        world.Simulate(ScheduleFor(individual.genome, env, mode, spec.horizon), spec);
    if (sim_calls) ++*sim_calls;
    individual.fitness += record.mean_light;
    individual.records.emplace(RecordKey{env, mode}, std::move(record));
  }
  return individual;
}

namespace {

// Evaluates every slot of `batch`; work is split across threads but each
// slot's result depends only on its own inputs.
std::uint64_t EvaluateBatch(std::vector<Individual>& batch, std::span<const EnvironmentSpec> envs,
                            Treatment treatment, const Evaluator& world, int threads) {
  std::vector<std::uint64_t> calls(batch.size(), 0);
  if (threads <= 1 || batch.size() <= 1) {
    for (std::size_t i = 0; i < batch.size(); ++i) {
      batch[i] = Evaluate(std::move(batch[i]), envs, treatment, world, &calls[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
      for (std::size_t i = next++; i < batch.size(); i = next++) {
        try {
          batch[i] = Evaluate(std::move(batch[i]), envs, treatment, world, &calls[i]);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    std::vector<std::jthread> pool;
    const auto n = std::min<std::size_t>(static_cast<std::size_t>(threads), batch.size());
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }
  std::uint64_t total = 0;
  for (auto c : calls) total += c;
  return total;
}

GenerationStats StatsFor(const Individual& champion, Treatment treatment, int env_count,
                         int generation, std::uint64_t sim_calls) {
  GenerationStats s;
  s.generation = generation;
  s.champion_fitness = champion.fitness;
  const ScheduleMode mode = ReportingMode(treatment);
  for (int e = 1; e <= env_count; ++e) {
    s.env_nondev.push_back(champion.records.at({e, mode}).mean_light);
  }
  s.min_env = *std::min_element(s.env_nondev.begin(), s.env_nondev.end());
  s.max_env = *std::max_element(s.env_nondev.begin(), s.env_nondev.end());
  s.compression_distance = CompressionDistance(champion.genome);
  s.sim_calls_cumulative = sim_calls;
  return s;
}

}  // namespace

RunLog RunTreatment(const TreatmentConfig& config, const Evaluator& world) {
  config.Validate();
  const auto envs = StandardEnvironments(config.env_count, config.horizon);
  const auto sheets = MutableSheets(config.treatment, config.env_count);
  const auto pop = static_cast<std::size_t>(config.population_size);
  const bool survival = config.treatment != Treatment::kRandomSearch;

  RunLog log;
  log.config = config;
  std::vector<Individual> parents;
  std::vector<Individual> batch(pop);

  for (int g = 1; g <= config.ExecutedGenerations(); ++g) {
    for (std::size_t l = 0; l < pop; ++l) {
      Rng rng = MakeRng(config.seed, {static_cast<std::uint64_t>(g), l});
      Individual& child = batch[l];
      child.id = static_cast<std::uint64_t>(g - 1) * pop + l + 1;
      if (g == 1 || !survival) {
        child.genome = RandomGenome(config.env_count, rng);
        child.parent_id = 0;
        if (!survival) child.genome = Mutate(child.genome, sheets, rng);
      } else {
        child.genome = Mutate(parents[l].genome, sheets, rng);
        child.parent_id = parents[l].id;
      }
    }
    log.sim_calls += EvaluateBatch(batch, envs, config.treatment, world, config.eval_threads);

    if (g == 1 || !survival) {
      parents = batch;
    } else {
      for (std::size_t l = 0; l < pop; ++l) {
        if (batch[l].fitness >= parents[l].fitness) parents[l] = batch[l];
      }
    }

    const auto champion = std::max_element(
        parents.begin(), parents.end(),
        [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
    log.generations.push_back({StatsFor(*champion, config.treatment, config.env_count, g,
                                        log.sim_calls),
                               champion->genome});
  }

  if (log.sim_calls != config.SimulationBudget()) {
    throw InternalError("simulation budget mismatch: issued " + std::to_string(log.sim_calls) +
                        ", expected " + std::to_string(config.SimulationBudget()));
  }
  return log;
}

RunLog RunTreatment(const TreatmentConfig& config) {
  return RunTreatment(config, SurrogateWorld{});
}

}  // namespace devcomp
