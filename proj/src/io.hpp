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

// On-disk formats.
//
//   run_<seed>_<treatment>.csv
//     generation,champion_fitness,env1_nondev,...,envE_nondev,min_env,max_env,
//     compression_distance,sim_calls_cumulative
//   run_<seed>_<treatment>_champion.json
//     {"treatment", "seed", "env_count", "generation", "fitness",
//      "sheets": [[40 row-major weights], ...]}
//   summary.csv      treatment,metric,median,ci_lo,ci_hi,stddev,n_runs
//   comparisons.csv  pair,U,p_raw,p_bonferroni
//
// Files are written as <name>.partial and renamed once complete.

#ifndef DEVCOMP_IO_HPP_
#define DEVCOMP_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "evolution.hpp"

namespace devcomp {

inline constexpr std::string_view kPartialSuffix = ".partial";

std::string RunCsvName(std::uint64_t seed, Treatment treatment);
std::string ChampionFileName(std::uint64_t seed, Treatment treatment);

struct RunFileId {
  std::uint64_t seed = 0;
  Treatment treatment{};
};

// Parses "run_<seed>_<treatment>.csv"; nullopt for anything else, including
// partial files.
std::optional<RunFileId> ParseRunCsvName(const std::string& filename);

void WriteRunCsv(std::ostream& out, const RunLog& log);
std::vector<GenerationStats> ReadRunCsv(std::istream& in);
std::vector<GenerationStats> ReadRunCsv(const std::filesystem::path& path);

struct ChampionFile {
  Treatment treatment{};
  std::uint64_t seed = 0;
  int generation = 0;
  double fitness = 0.0;
  GenomeTensor genome{1};
};

std::string ChampionToJson(const ChampionFile& champion);
ChampionFile ChampionFromJson(const std::string& text);
ChampionFile ReadChampionFile(const std::filesystem::path& path);

void WriteSummaryCsv(std::ostream& out, const SummaryTable& table);
void WriteComparisonsCsv(std::ostream& out, const SummaryTable& table);
void WriteGenerationalCsv(std::ostream& out, std::span<const GenerationalRow> rows);

// Writes via a .partial sibling and renames on success. Throws IoError.
void WriteFileAtomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace devcomp

#endif  // DEVCOMP_IO_HPP_
