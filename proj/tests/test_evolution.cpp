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

#include <atomic>
#include <cmath>
#include <set>

#include "doctest.h"
#include "error.hpp"
#include "evolution.hpp"

using namespace devcomp;

namespace {

class CountingWorld final : public Evaluator {
 public:
  FitnessRecord Simulate(const DevelopmentSchedule& schedule,
                         const EnvironmentSpec& spec) const override {
    ++calls;
    return devcomp::Simulate(schedule, spec);
  }
  mutable std::atomic<std::uint64_t> calls{0};
};

TreatmentConfig Small(Treatment t, int env_count, std::uint64_t seed) {
  TreatmentConfig c;
  c.treatment = t;
  c.env_count = env_count;
  c.generations = 6;
  c.population_size = 4;
  c.horizon = 60;
  c.seed = seed;
  return c;
}

bool SameLog(const RunLog& a, const RunLog& b) {
  if (a.generations.size() != b.generations.size() || a.sim_calls != b.sim_calls) return false;
  for (std::size_t i = 0; i < a.generations.size(); ++i) {
    const auto& x = a.generations[i];
    const auto& y = b.generations[i];
    if (x.stats.champion_fitness != y.stats.champion_fitness ||
        x.stats.env_nondev != y.stats.env_nondev ||
        x.stats.compression_distance != y.stats.compression_distance ||
        !(x.champion == y.champion)) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("Treatment names round-trip") {
  for (Treatment t : kAllTreatments) CHECK(ParseTreatment(TreatmentName(t)) == t);
  CHECK(TreatmentName(Treatment::kRandomSearch) == "random_search");
  CHECK_FALSE(ParseTreatment("dev").has_value());
  CHECK(IsDevelopmental(Treatment::kDc));
  CHECK(IsDevelopmental(Treatment::kReverseDc));
  CHECK_FALSE(IsDevelopmental(Treatment::kControl));
}

TEST_CASE("RandomGenome") {
  Rng a(1), b(1);
  const auto g = RandomGenome(3, a);
  CHECK(g.sheet_count() == 4);
  CHECK(g == RandomGenome(3, b));
  bool negative = false, positive = false;
  for (int k = 0; k < g.sheet_count(); ++k) {
    for (double w : g.sheet(k).data()) {
      CHECK(w >= -1.0);
      CHECK(w <= 1.0);
      negative |= w < 0;
      positive |= w > 0;
    }
  }
  CHECK(negative);
  CHECK(positive);
}

TEST_CASE("MutableSheets") {
  CHECK(MutableSheets(Treatment::kDc, 3) == std::vector<int>{0, 1, 2, 3});
  CHECK(MutableSheets(Treatment::kReverseDc, 2) == std::vector<int>{0, 1, 2});
  CHECK(MutableSheets(Treatment::kControl, 3) == std::vector<int>{0});
  CHECK(MutableSheets(Treatment::kRandomSearch, 4) == std::vector<int>{0});
}

TEST_CASE("Mutate changes at most one weight inside the allowed sheets") {
  Rng rng(77);
  for (Treatment t : kAllTreatments) {
    const auto sheets = MutableSheets(t, 3);
    for (int trial = 0; trial < 500; ++trial) {
      const auto parent = RandomGenome(3, rng);
      const auto child = Mutate(parent, sheets, rng);
      int changed = 0;
      for (int k = 0; k < parent.sheet_count(); ++k) {
        for (std::size_t i = 0; i < kSynapseCount; ++i) {
          const double before = parent.sheet(k).flat(i), after = child.sheet(k).flat(i);
          if (before != after) {
            ++changed;
            CHECK(std::find(sheets.begin(), sheets.end(), k) != sheets.end());
            CHECK(std::abs(after) <= 1.0);
          }
        }
      }
      CHECK(changed <= 1);
    }
  }
}

TEST_CASE("Mutate leaves zero weights at zero") {
  Rng rng(3);
  GenomeTensor zero(2);
  const auto sheets = MutableSheets(Treatment::kDc, 2);
  for (int i = 0; i < 200; ++i) CHECK(Mutate(zero, sheets, rng) == zero);
}

TEST_CASE("Mutate spread scales with the weight magnitude") {
  Rng rng(8);
  std::vector<SynapseMatrix> sheets(2, SynapseMatrix::Filled(0.01));
  GenomeTensor g(sheets);
  const std::vector<int> only0{0};
  for (int i = 0; i < 500; ++i) {
    const auto c = Mutate(g, only0, rng);
    for (double w : c.sheet(0).data()) CHECK(std::abs(w - 0.01) < 0.01 * 8);
  }
}

TEST_CASE("Mutate contract") {
  Rng rng(1);
  GenomeTensor g(2);
  CHECK_THROWS_AS(Mutate(g, std::vector<int>{}, rng), ContractViolation);
  CHECK_THROWS_AS(Mutate(g, std::vector<int>{3}, rng), ContractViolation);
}

TEST_CASE("Evaluate on the zero genome") {
  const auto envs = StandardEnvironments(2, 100);
  SurrogateWorld world;
  Individual zero;
  zero.genome = GenomeTensor(2);

  std::uint64_t calls = 0;
  const auto dc = Evaluate(zero, envs, Treatment::kDc, world, &calls);
  CHECK(dc.fitness == doctest::Approx(4.0 / 900.0).epsilon(1e-15));
  CHECK(calls == 4);
  CHECK(dc.records.size() == 4);

  calls = 0;
  const auto ctl = Evaluate(zero, envs, Treatment::kControl, world, &calls);
  CHECK(ctl.fitness == doctest::Approx(2.0 / 900.0).epsilon(1e-15));
  CHECK(calls == 2);
  CHECK(ctl.records.count({1, ScheduleMode::kStatic}) == 1);
}

TEST_CASE("Evaluate: developmental treatment needs one target per environment") {
  const auto envs = StandardEnvironments(2, 50);
  SurrogateWorld world;
  Individual ind;
  ind.genome = GenomeTensor(3);
  CHECK_THROWS_AS(Evaluate(ind, envs, Treatment::kDc, world), ContractViolation);
  CHECK_NOTHROW(Evaluate(ind, envs, Treatment::kControl, world));
}

TEST_CASE("Budget arithmetic") {
  TreatmentConfig c;
  c.env_count = 2;
  c.generations = 1500;
  c.population_size = 50;
  for (Treatment t : kAllTreatments) {
    c.treatment = t;
    CHECK(c.SimulationBudget() == 150000);
    CHECK(static_cast<std::uint64_t>(c.ExecutedGenerations()) * c.population_size *
              c.SimulationsPerIndividual() ==
          150000);
  }
  c.generations = 7;
  c.treatment = Treatment::kDc;
  CHECK_THROWS_AS(c.Validate(), ContractViolation);
}

TEST_CASE("RunTreatment spends exactly the budget") {
  for (Treatment t : kAllTreatments) {
    for (int e : {2, 3}) {
      CountingWorld world;
      const auto cfg = Small(t, e, 5);
      const auto log = RunTreatment(cfg, world);
      CHECK(world.calls.load() == cfg.SimulationBudget());
      CHECK(log.sim_calls == cfg.SimulationBudget());
      CHECK(static_cast<int>(log.generations.size()) == cfg.ExecutedGenerations());
      CHECK(log.generations.back().stats.sim_calls_cumulative == cfg.SimulationBudget());
    }
  }
}

TEST_CASE("RunTreatment: hill climbers never lose fitness") {
  for (Treatment t : {Treatment::kDc, Treatment::kControl, Treatment::kReverseDc}) {
    const auto log = RunTreatment(Small(t, 2, 12));
    for (std::size_t i = 1; i < log.generations.size(); ++i) {
      CHECK(log.generations[i].stats.champion_fitness >=
            log.generations[i - 1].stats.champion_fitness);
    }
  }
}

TEST_CASE("RunTreatment: reported stats") {
  const auto log = RunTreatment(Small(Treatment::kDc, 3, 2));
  for (std::size_t i = 0; i < log.generations.size(); ++i) {
    const auto& s = log.generations[i].stats;
    CHECK(s.generation == static_cast<int>(i) + 1);
    REQUIRE(s.env_nondev.size() == 3);
    CHECK(s.min_env == *std::min_element(s.env_nondev.begin(), s.env_nondev.end()));
    CHECK(s.max_env == *std::max_element(s.env_nondev.begin(), s.env_nondev.end()));
    CHECK(log.generations[i].champion.sheet_count() == 4);
  }
}

TEST_CASE("RunTreatment is deterministic and thread-count independent") {
  for (Treatment t : kAllTreatments) {
    auto cfg = Small(t, 2, 99);
    const auto a = RunTreatment(cfg);
    const auto b = RunTreatment(cfg);
    CHECK(SameLog(a, b));
    cfg.eval_threads = 3;
    CHECK(SameLog(a, RunTreatment(cfg)));
  }
}

TEST_CASE("RunTreatment: different seeds explore differently") {
  const auto a = RunTreatment(Small(Treatment::kControl, 2, 1));
  const auto b = RunTreatment(Small(Treatment::kControl, 2, 2));
  CHECK_FALSE(a.generations.front().champion == b.generations.front().champion);
}
