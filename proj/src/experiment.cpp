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

#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "error.hpp"
#include "io.hpp"
#include "json.hpp"
#include "rng.hpp"

namespace fs = std::filesystem;

namespace devcomp {

namespace {

constexpr std::uint64_t kSummarySeed = 0x5EEDB007;

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> SplitList(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = Trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <typename Int>
Int ParseInt(std::string_view key, std::string_view value) {
  Int v{};
  auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  Require(res.ec == std::errc() && res.ptr == value.data() + value.size(),
          "invalid integer for '" + std::string(key) + "': '" + std::string(value) + "'");
  return v;
}

std::string NormalizeKey(std::string_view key) {
  std::string k(Trim(key));
  while (k.starts_with("-")) k.erase(0, 1);
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

void WriteSummaryFiles(const fs::path& dir) {
  const std::vector<RunTrace> traces = LoadRunTraces(dir);
  const SummaryTable table = SummarizeRuns(traces);
  std::ostringstream summary, comparisons, generational;
  WriteSummaryCsv(summary, table);
  WriteComparisonsCsv(comparisons, table);
  WriteGenerationalCsv(generational, GenerationalMedians(traces));
  WriteFileAtomically(dir / "summary.csv", summary.str());
  WriteFileAtomically(dir / "comparisons.csv", comparisons.str());
  WriteFileAtomically(dir / "generational.csv", generational.str());
}

struct Cell {
  Treatment treatment;
  int env_count;
  int run_index;
};

}  // namespace

void ExperimentPlan::Validate() const {
  Require(!treatments.empty(), "plan: no treatments");
  Require(!env_counts.empty(), "plan: no environment counts");
  for (int e : env_counts) {
    Require(e >= 2 && e <= 4, "plan: environment counts must be 2, 3 or 4");
  }
  Require(runs_per_cell >= 1, "plan: runs must be >= 1");
  Require(generations >= 2 && generations % 2 == 0, "plan: generations must be even and >= 2");
  Require(population_size >= 1, "plan: pop_size must be >= 1");
  Require(horizon >= 2, "plan: timesteps must be >= 2");
  Require(workers >= 1, "plan: workers must be >= 1");
  Require(eval_threads >= 1, "plan: eval_threads must be >= 1");
  Require(!output_dir.empty(), "plan: output directory not set");
}

std::string ExperimentPlan::ToJson() const {
  nlohmann::ordered_json j;
  auto names = nlohmann::ordered_json::array();
  for (Treatment t : treatments) names.push_back(TreatmentName(t));
  j["treatments"] = std::move(names);
  j["env_counts"] = env_counts;
  j["runs_per_cell"] = runs_per_cell;
  j["generations"] = generations;
  j["population_size"] = population_size;
  j["timesteps"] = horizon;
  j["master_seed"] = master_seed;
  j["workers"] = workers;
  j["eval_threads"] = eval_threads;
  j["bootstrap_resamples"] = kBootstrapResamples;
  return j.dump(2) + "\n";
}

void ApplyProfile(ExperimentPlan& plan, std::string_view profile) {
  if (profile == "desk") {
    plan.treatments = {Treatment::kDc, Treatment::kControl, Treatment::kRandomSearch};
    plan.env_counts = {2};
    plan.runs_per_cell = 20;
    plan.generations = 200;
    plan.population_size = 20;
    plan.horizon = 400;
  } else if (profile == "paper") {
    plan.treatments.assign(std::begin(kAllTreatments), std::end(kAllTreatments));
    plan.env_counts = {2, 3, 4};
    plan.runs_per_cell = 100;
    plan.generations = 1500;
    plan.population_size = 50;
    plan.horizon = 1000;
  } else {
    throw ContractViolation("unknown profile '" + std::string(profile) + "' (desk, paper)");
  }
}

void ApplySetting(ExperimentPlan& plan, std::string_view raw_key, std::string_view raw_value) {
  const std::string key = NormalizeKey(raw_key);
  const std::string_view value = Trim(raw_value);
  Require(!value.empty(), "empty value for '" + key + "'");
  if (key == "profile") {
    ApplyProfile(plan, value);
  } else if (key == "treatment" || key == "treatments") {
    std::vector<Treatment> ts;
    for (auto name : SplitList(value)) {
      const auto t = ParseTreatment(name);
      Require(t.has_value(), "unknown treatment '" + std::string(name) + "'");
      if (std::find(ts.begin(), ts.end(), *t) == ts.end()) ts.push_back(*t);
    }
    plan.treatments = std::move(ts);
  } else if (key == "envs" || key == "env_counts") {
    std::vector<int> es;
    for (auto item : SplitList(value)) {
      const int e = ParseInt<int>(key, item);
      if (std::find(es.begin(), es.end(), e) == es.end()) es.push_back(e);
    }
    plan.env_counts = std::move(es);
  } else if (key == "runs") {
    plan.runs_per_cell = ParseInt<int>(key, value);
  } else if (key == "generations") {
    plan.generations = ParseInt<int>(key, value);
  } else if (key == "pop_size" || key == "population") {
    plan.population_size = ParseInt<int>(key, value);
  } else if (key == "timesteps" || key == "horizon") {
    plan.horizon = ParseInt<int>(key, value);
  } else if (key == "seed") {
    plan.master_seed = ParseInt<std::uint64_t>(key, value);
  } else if (key == "out") {
    plan.output_dir = fs::path(std::string(value));
  } else if (key == "workers") {
    plan.workers = ParseInt<int>(key, value);
  } else if (key == "eval_threads") {
    plan.eval_threads = ParseInt<int>(key, value);
  } else {
    throw ContractViolation("unknown setting '" + key + "'");
  }
}

void LoadPlanFile(ExperimentPlan& plan, const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view text = line;
    text = Trim(text.substr(0, text.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    Require(eq != std::string_view::npos,
            path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    ApplySetting(plan, text.substr(0, eq), text.substr(eq + 1));
  }
}

std::uint64_t CellSeed(std::uint64_t master_seed, Treatment treatment, int env_count,
                       int run_index) {
  return DeriveSeed(master_seed, {HashName(TreatmentName(treatment)),
                                  static_cast<std::uint64_t>(env_count),
                                  static_cast<std::uint64_t>(run_index)});
}

fs::path EnvDirectory(const fs::path& root, int env_count) {
  return root / ("E" + std::to_string(env_count));
}

ExperimentReport RunExperiment(const ExperimentPlan& plan, const ProgressCallback& progress) {
  plan.Validate();
  std::error_code ec;
  fs::create_directories(plan.output_dir, ec);
  if (ec) throw IoError("cannot create " + plan.output_dir.string() + ": " + ec.message());
  for (int e : plan.env_counts) {
    fs::create_directories(EnvDirectory(plan.output_dir, e), ec);
    if (ec) throw IoError("cannot create " + EnvDirectory(plan.output_dir, e).string());
  }
  WriteFileAtomically(plan.output_dir / "manifest.json", plan.ToJson());

  std::vector<Cell> cells;
  for (int e : plan.env_counts) {
    for (Treatment t : plan.treatments) {
      for (int r = 0; r < plan.runs_per_cell; ++r) cells.push_back({t, e, r});
    }
  }

  ExperimentReport report;
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const Cell& cell = cells[i];
      TreatmentConfig config;
      config.treatment = cell.treatment;
      config.env_count = cell.env_count;
      config.generations = plan.generations;
      config.population_size = plan.population_size;
      config.horizon = plan.horizon;
      config.seed = CellSeed(plan.master_seed, cell.treatment, cell.env_count, cell.run_index);
      config.eval_threads = plan.eval_threads;
      const std::string label = std::string(TreatmentName(cell.treatment)) + " E=" +
                                std::to_string(cell.env_count) + " run " +
                                std::to_string(cell.run_index);
      try {
        const RunLog log = RunTreatment(config);
        const fs::path dir = EnvDirectory(plan.output_dir, cell.env_count);
        std::ostringstream csv;
        WriteRunCsv(csv, log);
        const ChampionSummary best = OverallRunChampion(log);
        ChampionFile champion{config.treatment, config.seed, best.generation, best.fitness,
                              log.generations[static_cast<std::size_t>(best.generation - 1)]
                                  .champion};
        WriteFileAtomically(dir / ChampionFileName(config.seed, config.treatment),
                            ChampionToJson(champion));
        WriteFileAtomically(dir / RunCsvName(config.seed, config.treatment), csv.str());
        std::lock_guard lock(mu);
        ++report.cells_completed;
        if (progress) progress("done " + label);
      } catch (const std::exception& ex) {
        std::lock_guard lock(mu);
        report.failures.push_back(label + ": " + ex.what());
        if (progress) progress("FAILED " + label + ": " + ex.what());
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const auto n = std::min<std::size_t>(static_cast<std::size_t>(plan.workers), cells.size());
    for (std::size_t w = 0; w < n; ++w) pool.emplace_back(worker);
  }
  std::sort(report.failures.begin(), report.failures.end());

  for (int e : plan.env_counts) {
    const fs::path dir = EnvDirectory(plan.output_dir, e);
    try {
      WriteSummaryFiles(dir);
    } catch (const std::exception& ex) {
      report.failures.push_back("summary E=" + std::to_string(e) + ": " + ex.what());
    }
  }
  return report;
}

std::vector<RunTrace> LoadRunTraces(const fs::path& dir) {
  std::vector<std::pair<std::string, RunFileId>> runs;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (auto id = ParseRunCsvName(name)) runs.emplace_back(name, *id);
  }
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  if (runs.empty()) throw IoError("no complete run CSVs in " + dir.string());
  std::sort(runs.begin(), runs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<RunTrace> traces;
  for (const auto& [name, id] : runs) {
    RunTrace t{id.treatment, id.seed, ReadRunCsv(dir / name)};
    if (t.generations.empty()) throw IoError(name + ": run CSV has no generations");
    traces.push_back(std::move(t));
  }
  return traces;
}

SummaryTable SummarizeRuns(std::span<const RunTrace> traces) {
  std::vector<ChampionSummary> champions;
  std::set<Treatment> present;
  for (const auto& t : traces) {
    champions.push_back(OverallRunChampion(t.generations, t.treatment, t.seed));
    present.insert(t.treatment);
  }
  const std::vector<Treatment> required(present.begin(), present.end());
  return SummarizeTreatments(champions, required, kSummarySeed);
}

SummaryTable SummarizeDirectory(const fs::path& dir) { return SummarizeRuns(LoadRunTraces(dir)); }

std::vector<fs::path> Summarize(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw IoError("not a directory: " + root.string());
  std::vector<fs::path> dirs;
  auto has_runs = [](const fs::path& d) {
    std::error_code e;
    for (const auto& entry : fs::directory_iterator(d, e)) {
      if (entry.is_regular_file() && ParseRunCsvName(entry.path().filename().string())) {
        return true;
      }
    }
    return false;
  };
  if (has_runs(root)) dirs.push_back(root);
  std::vector<fs::path> subdirs;
  for (const auto& entry : fs::directory_iterator(root, ec)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_directory() && name.size() > 1 && name[0] == 'E' && has_runs(entry.path())) {
      subdirs.push_back(entry.path());
    }
  }
  std::sort(subdirs.begin(), subdirs.end());
  dirs.insert(dirs.end(), subdirs.begin(), subdirs.end());
  if (dirs.empty()) throw IoError("no complete run CSVs under " + root.string());

  for (const auto& dir : dirs) WriteSummaryFiles(dir);
  return dirs;
}

}  // namespace devcomp
