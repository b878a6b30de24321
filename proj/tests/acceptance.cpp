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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fail.
//
//   devcomp_acceptance [--work DIR] [--keep]

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "analysis.hpp"
#include "environment.hpp"
#include "evolution.hpp"
#include "experiment.hpp"
#include "format.hpp"
#include "io.hpp"
#include "oracles.hpp"
#include "rng.hpp"

namespace fs = std::filesystem;
using namespace devcomp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

int Workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---------------------------------------------------------------------------

Outcome DevelopmentIdentity() {
  Rng rng = MakeRng(101);
  const int T = 1000;
  const auto envs = StandardEnvironments(2, T);
  for (int i = 0; i < 1000; ++i) {
    const auto random = RandomGenome(2, rng);
    // Every target is a copy of the base.
    std::vector<SynapseMatrix> sheets(3, random.sheet(0));
    const GenomeTensor g(sheets);
    for (const auto& spec : envs) {
      const auto dev = Simulate(ScheduleFor(g, spec.index, ScheduleMode::kDevelopmental, T), spec);
      const auto fixed =
          Simulate(ScheduleFor(g, spec.index, ScheduleMode::kNonDevelopmental, T), spec);
      if (dev.per_step_light != fixed.per_step_light || dev.mean_light != fixed.mean_light) {
        return {false, "genome " + std::to_string(i) + " env " + std::to_string(spec.index) +
                           " differs"};
      }
    }
  }
  return {true, "1000 genomes x 2 environments bit-identical"};
}

Outcome InterpolationEndpoints() {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> w(-1, 1);
  std::uniform_int_distribution<int> horizon(2, 1000);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double b = w(rng), g = w(rng);
    const int T = horizon(rng);
    if (InterpolatedWeight(b, g, 0, T) != b || InterpolatedWeight(b, g, T - 1, T) != g) {
      return {false, "endpoint mismatch at triple " + std::to_string(i)};
    }
    const double lo = std::min(b, g), hi = std::max(b, g);
    double prev2 = 0, prev1 = 0;
    for (int t = 0; t < T; ++t) {
      const double v = InterpolatedWeight(b, g, t, T);
      if (v < lo || v > hi) return {false, "value outside [min, max] at triple " + std::to_string(i)};
      if (t >= 2) worst = std::max(worst, std::abs(v - 2 * prev1 + prev2));
      prev2 = prev1;
      prev1 = v;
    }
  }
  return {worst <= 1e-12, "10000 triples, max |second difference| = " + Num(worst)};
}

Outcome MutationContract() {
  Rng rng = MakeRng(303);
  int checked = 0;
  for (Treatment t : kAllTreatments) {
    for (int i = 0; i < 2500; ++i) {
      const int E = 2 + i % 3;
      const auto sheets = MutableSheets(t, E);
      const auto parent = RandomGenome(E, rng);
      const auto child = Mutate(parent, sheets, rng);
      int changed = 0;
      for (int k = 0; k < parent.sheet_count(); ++k) {
        for (std::size_t s = 0; s < kSynapseCount; ++s) {
          const double after = child.sheet(k).flat(s);
          if (after < -1.0 || after > 1.0) return {false, "weight left [-1, 1]"};
          if (after != parent.sheet(k).flat(s)) {
            ++changed;
            if (!IsDevelopmental(t) && k != 0) {
              return {false, std::string(TreatmentName(t)) + " touched sheet " + std::to_string(k)};
            }
          }
        }
      }
      if (changed != 1) return {false, std::to_string(changed) + " scalars changed"};
      ++checked;
    }
  }
  GenomeTensor zero(3);
  for (int i = 0; i < 1000; ++i) {
    if (!(Mutate(zero, MutableSheets(Treatment::kDc, 3), rng) == zero)) {
      return {false, "a zero weight moved"};
    }
  }
  return {true, std::to_string(checked) + " mutations, 1000 zero-weight draws"};
}

class CountingWorld final : public Evaluator {
 public:
  FitnessRecord Simulate(const DevelopmentSchedule& schedule,
                         const EnvironmentSpec& spec) const override {
    ++calls;
    return devcomp::Simulate(schedule, spec);
  }
  mutable std::atomic<std::uint64_t> calls{0};
};

Outcome BudgetEqualization() {
  std::string detail;
  for (int E : {2, 3, 4}) {
    for (Treatment t : kAllTreatments) {
      TreatmentConfig cfg;
      cfg.treatment = t;
      cfg.env_count = E;
      cfg.generations = 20;
      cfg.population_size = 10;
      cfg.seed = DeriveSeed(404, {static_cast<std::uint64_t>(E), HashName(TreatmentName(t))});
      CountingWorld world;
      RunTreatment(cfg, world);
      const std::uint64_t want = 20ull * 10ull * static_cast<std::uint64_t>(E);
      if (world.calls.load() != want) {
        return {false, std::string(TreatmentName(t)) + " E=" + std::to_string(E) + ": " +
                           std::to_string(world.calls.load()) + " != " + std::to_string(want)};
      }
    }
  }
  return {true, "G*P*E simulations for all treatments at E = 2, 3, 4"};
}

Outcome ZeroBaseline() {
  const GenomeTensor zero(4);
  for (int T : {kDefaultHorizon, 400}) {
    for (const auto& spec : StandardEnvironments(4, T)) {
      for (ScheduleMode m : {ScheduleMode::kDevelopmental, ScheduleMode::kNonDevelopmental,
                             ScheduleMode::kReverseDevelopmental, ScheduleMode::kStatic}) {
        const double v = Simulate(ScheduleFor(zero, spec.index, m, T), spec).mean_light;
        if (v != 1.0 / 900.0) {
          return {false, "env " + std::to_string(spec.index) + " scored " + FormatDouble(v)};
        }
      }
    }
  }
  return {true, "mean light == 1/900 in all 4 environments, every mode, T = 1000 and 400"};
}

Outcome StatisticsOracle() {
  std::mt19937_64 gen(505);
  std::uniform_real_distribution<double> u(0, 1);
  int cases = 0;
  for (std::size_t n1 = 1; n1 <= 5; ++n1) {
    for (std::size_t n2 = 1; n2 <= 5; ++n2) {
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> a(n1), b(n2);
        for (auto& x : a) x = u(gen);
        for (auto& x : b) x = u(gen);
        const auto r = MannWhitneyU(a, b);
        const double want_u = oracle::PairwiseU(a, b);
        const double want_p = oracle::BruteForceExactP(n1, n2, want_u);
        if (r.u != want_u || std::abs(r.p_two_sided - want_p) > 1e-12) {
          return {false, std::to_string(n1) + "x" + std::to_string(n2) + ": got U=" +
                             FormatDouble(r.u) + " p=" + FormatDouble(r.p_two_sided) +
                             ", want U=" + FormatDouble(want_u) + " p=" + FormatDouble(want_p)};
        }
        ++cases;
      }
    }
  }
  if (std::abs(Bonferroni(0.01, 3) - 0.03) > 1e-15) {
    return {false, "bonferroni(0.01, 3)"};
  }
  if (Bonferroni(0.5, 3) != 1.0 || Bonferroni(0.37, 1) != 0.37 || Bonferroni(0.0, 6) != 0.0) {
    return {false, "bonferroni identities"};
  }
  Rng rng = MakeRng(506);
  const std::vector<double> same(15, 0.25);
  const auto ci = MedianWithCi(same, kBootstrapResamples, rng);
  if (ci.median != 0.25 || ci.lo != 0.25 || ci.hi != 0.25) return {false, "constant-input CI"};
  const std::vector<double> one{3.5};
  const auto ci1 = MedianWithCi(one, kBootstrapResamples, rng);
  if (ci1.median != 3.5 || ci1.lo != 3.5 || ci1.hi != 3.5) return {false, "single-value CI"};
  return {true, std::to_string(cases) + " samples up to 5x5 match enumeration; bonferroni and CI "
                                        "identities hold"};
}

// ---------------------------------------------------------------------------
// Desk-profile experiments.

struct DeskRun {
  std::uint64_t seed = 0;
  fs::path dir;  // the E2 directory
  bool ok = false;
  std::string error;
};

DeskRun RunDesk(std::uint64_t seed, const fs::path& root) {
  ExperimentPlan plan;
  ApplyProfile(plan, "desk");
  plan.master_seed = seed;
  plan.output_dir = root;
  plan.workers = Workers();
  DeskRun run{seed, EnvDirectory(root, 2)};
  const auto start = std::chrono::steady_clock::now();
  const auto report = RunExperiment(plan);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::fprintf(stderr, "desk seed %llu: %d cells in %.0f s\n",
               static_cast<unsigned long long>(seed), report.cells_completed, secs);
  run.ok = report.failures.empty();
  if (!run.ok) run.error = report.failures.front();
  return run;
}

Outcome Determinism(const DeskRun& a, const DeskRun& b) {
  if (!a.ok || !b.ok) return {false, "desk run failed: " + a.error + b.error};
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(a.dir)) {
    const auto name = entry.path().filename().string();
    if (!ParseRunCsvName(name)) continue;
    const auto other = b.dir / name;
    if (!fs::exists(other)) return {false, name + " missing from second run"};
    if (Slurp(entry.path()) != Slurp(other)) return {false, name + " differs"};
    ++compared;
  }
  if (compared != 60) return {false, "expected 60 run CSVs, found " + std::to_string(compared)};
  return {true, "60 run CSVs byte-identical across two executions"};
}

Outcome Directional(const std::vector<DeskRun>& runs) {
  int passing = 0;
  std::string detail;
  for (const auto& run : runs) {
    if (!run.ok) {
      detail += " seed " + std::to_string(run.seed) + ": failed;";
      continue;
    }
    const auto table = SummarizeDirectory(run.dir);
    std::map<Treatment, double> median;
    for (const auto& row : table.rows) {
      if (row.metric == "min_env") median[row.treatment] = row.ci.median;
    }
    const ComparisonResult* vs_control = nullptr;
    for (const auto& c : table.comparisons) {
      if (c.first == Treatment::kDc && c.second == Treatment::kControl) vs_control = &c;
    }
    const bool order = median[Treatment::kDc] > median[Treatment::kControl] &&
                       median[Treatment::kDc] > median[Treatment::kRandomSearch];
    const bool significant =
        vs_control && vs_control->p_raw < 0.05 && vs_control->p_bonferroni < 0.15;
    if (order && significant) ++passing;
    detail += " seed " + std::to_string(run.seed) + ": dc " + Num(median[Treatment::kDc]) +
              " control " + Num(median[Treatment::kControl]) + " random " +
              Num(median[Treatment::kRandomSearch]) +
              (vs_control ? " p " + Num(vs_control->p_raw) + " adj " +
                                Num(vs_control->p_bonferroni)
                          : std::string(" no comparison")) +
              (order && significant ? " ok;" : " miss;");
  }
  return {passing >= 2, std::to_string(passing) + "/3 seeds;" + detail};
}

Outcome Compression(const std::vector<DeskRun>& runs) {
  int passing = 0;
  std::string detail;
  for (const auto& run : runs) {
    if (!run.ok) continue;
    std::vector<double> first, last;
    for (const auto& trace : LoadRunTraces(run.dir)) {
      if (trace.treatment != Treatment::kDc) continue;
      first.push_back(trace.generations.front().compression_distance);
      last.push_back(trace.generations.back().compression_distance);
    }
    Rng rng_a = MakeRng(run.seed, {HashName("compression"), 1});
    Rng rng_b = MakeRng(run.seed, {HashName("compression"), 2});
    const auto a = MedianWithCi(first, kBootstrapResamples, rng_a);
    const auto b = MedianWithCi(last, kBootstrapResamples, rng_b);
    const bool ok = b.median < a.median && b.hi < a.lo;
    if (ok) ++passing;
    detail += " seed " + std::to_string(run.seed) + ": gen1 " + Num(a.median) + " [" +
              Num(a.lo) + ", " + Num(a.hi) + "] final " + Num(b.median) + " [" + Num(b.lo) +
              ", " + Num(b.hi) + "]" + (ok ? " ok;" : " miss;");
  }
  return {passing >= 2, std::to_string(passing) + "/3 seeds;" + detail};
}

Outcome MonotoneChampions(const std::vector<DeskRun>& runs) {
  int checked = 0;
  auto monotone = [](const std::vector<GenerationStats>& g) {
    for (std::size_t i = 1; i < g.size(); ++i) {
      if (g[i].champion_fitness < g[i - 1].champion_fitness) return false;
    }
    return true;
  };
  for (const auto& run : runs) {
    if (!run.ok) return {false, "desk run failed"};
    for (const auto& trace : LoadRunTraces(run.dir)) {
      if (trace.treatment == Treatment::kRandomSearch) continue;
      if (!monotone(trace.generations)) {
        return {false, std::string(TreatmentName(trace.treatment)) + " seed " +
                           std::to_string(trace.seed) + " decreased"};
      }
      ++checked;
    }
  }
  // The desk profile has no reverse_dc, so run it at the same scale.
  ExperimentPlan desk;
  ApplyProfile(desk, "desk");
  for (int r = 0; r < desk.runs_per_cell; ++r) {
    TreatmentConfig cfg;
    cfg.treatment = Treatment::kReverseDc;
    cfg.env_count = 2;
    cfg.generations = desk.generations;
    cfg.population_size = desk.population_size;
    cfg.horizon = desk.horizon;
    cfg.seed = CellSeed(desk.master_seed, Treatment::kReverseDc, 2, r);
    cfg.eval_threads = Workers();
    const auto log = RunTreatment(cfg);
    std::vector<GenerationStats> stats;
    for (const auto& g : log.generations) stats.push_back(g.stats);
    if (!monotone(stats)) return {false, "reverse_dc run " + std::to_string(r) + " decreased"};
    ++checked;
  }
  return {true, std::to_string(checked) + " dc/control/reverse_dc runs non-decreasing"};
}

}  // namespace

int main(int argc, char** argv) {
  fs::path work = fs::temp_directory_path() / ("devcomp_acceptance_" + std::to_string(::getpid()));
  bool keep = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--work" && i + 1 < argc) {
      work = argv[++i];
    } else if (arg == "--keep") {
      keep = true;
    } else {
      std::fprintf(stderr, "usage: %s [--work DIR] [--keep]\n", argv[0]);
      return 2;
    }
  }

  int failed = 0;
  auto report = [&](const char* name, const std::function<Outcome()>& check) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = check();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.c_str());
    std::fflush(stdout);
  };

  report("development_identity", DevelopmentIdentity);
  report("interpolation_endpoints", InterpolationEndpoints);
  report("mutation_contract", MutationContract);
  report("budget_equalization", BudgetEqualization);
  report("zero_controller_baseline", ZeroBaseline);
  report("statistics_oracle", StatisticsOracle);

  fs::remove_all(work);
  std::vector<DeskRun> desk;
  for (std::uint64_t seed : {1, 2, 3}) {
    try {
      desk.push_back(RunDesk(seed, work / ("seed" + std::to_string(seed))));
    } catch (const std::exception& ex) {
      desk.push_back({seed, {}, false, ex.what()});
    }
  }
  DeskRun repeat;
  try {
    repeat = RunDesk(1, work / "seed1_repeat");
  } catch (const std::exception& ex) {
    repeat = {1, {}, false, ex.what()};
  }

  report("determinism", [&] { return Determinism(desk[0], repeat); });
  report("directional_dc_beats_control_and_random", [&] { return Directional(desk); });
  report("directional_compression", [&] { return Compression(desk); });
  report("monotone_champions", [&] { return MonotoneChampions(desk); });

  if (!keep) fs::remove_all(work);
  std::printf("%s: %d criteria failed\n", failed ? "FAILED" : "ALL PASSED", failed);
  return failed ? 1 : 0;
}
