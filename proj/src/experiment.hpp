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

// Batch runner for (treatment x environment count x run) matrices.
//
// Output layout:
//   <out>/manifest.json
//   <out>/E<k>/run_<seed>_<treatment>.csv
//   <out>/E<k>/run_<seed>_<treatment>_champion.json
//   <out>/E<k>/summary.csv
//   <out>/E<k>/comparisons.csv

#ifndef DEVCOMP_EXPERIMENT_HPP_
#define DEVCOMP_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "analysis.hpp"
#include "evolution.hpp"

namespace devcomp {

struct ExperimentPlan {
  std::vector<Treatment> treatments{Treatment::kDc, Treatment::kControl,
                                    Treatment::kRandomSearch};
  std::vector<int> env_counts{2};
  int runs_per_cell = 20;
  int generations = 200;
  int population_size = 20;
  int horizon = 400;
  std::uint64_t master_seed = 1;
  std::filesystem::path output_dir = "results";
  int workers = 1;
  int eval_threads = 1;

  void Validate() const;
  std::string ToJson() const;
};

// "desk": 20 runs, G=200, P=20, T=400, dc/control/random_search at E=2.
// "paper": 100 runs, G=1500, P=50, T=1000, all four treatments at E=2,3,4.
// Only the fields a profile names are changed.
void ApplyProfile(ExperimentPlan& plan, std::string_view profile);

// Sets one field from text. Keys: profile, treatment(s), envs, runs,
// generations, pop_size, timesteps, seed, out, workers, eval_threads.
// Dashes and underscores are interchangeable. Throws ContractViolation.
void ApplySetting(ExperimentPlan& plan, std::string_view key, std::string_view value);

// Reads "key = value" lines; '#' starts a comment.
void LoadPlanFile(ExperimentPlan& plan, const std::filesystem::path& path);

// Stable per-cell seed: hash of (master seed, treatment, E, run index).
std::uint64_t CellSeed(std::uint64_t master_seed, Treatment treatment, int env_count,
                       int run_index);

std::filesystem::path EnvDirectory(const std::filesystem::path& root, int env_count);

struct ExperimentReport {
  int cells_completed = 0;
  std::vector<std::string> failures;  // one line per failed cell
};

using ProgressCallback = std::function<void(const std::string&)>;

// Runs every cell, then summarizes each environment directory. A failing
// cell is reported and does not stop the others.
ExperimentReport RunExperiment(const ExperimentPlan& plan, const ProgressCallback& progress = {});

// Run CSVs of one directory, read in file-name order.
std::vector<RunTrace> LoadRunTraces(const std::filesystem::path& dir);

SummaryTable SummarizeRuns(std::span<const RunTrace> traces);
SummaryTable SummarizeDirectory(const std::filesystem::path& dir);

// Regenerates summary.csv and comparisons.csv in `root` (if it holds run
// CSVs) and in every E<k> subdirectory. Returns the directories written.
// Throws IoError when no complete run is found.
std::vector<std::filesystem::path> Summarize(const std::filesystem::path& root);

}  // namespace devcomp

#endif  // DEVCOMP_EXPERIMENT_HPP_
