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

// Run-champion extraction and the nonparametric statistics used to compare
// treatments.

#ifndef DEVCOMP_ANALYSIS_HPP_
#define DEVCOMP_ANALYSIS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "development.hpp"
#include "evolution.hpp"
#include "rng.hpp"

namespace devcomp {

inline constexpr int kBootstrapResamples = 10000;

struct ChampionSummary {
  std::uint64_t seed = 0;
  Treatment treatment{};
  int generation = 0;
  double fitness = 0.0;
  std::vector<double> env_nondev;
  double min_env = 0.0;
  double max_env = 0.0;
  double compression_distance = 0.0;
};

// Generation with the highest champion fitness; the earliest one wins ties.
ChampionSummary OverallRunChampion(std::span<const GenerationStats> generations,
                                   Treatment treatment, std::uint64_t seed);
ChampionSummary OverallRunChampion(const RunLog& log);

// (1/E) * sum_e ||sheet_0 - sheet_e||_2 over all 40 weights.
double CompressionDistance(const GenomeTensor& genome);

double Median(std::span<const double> values);

// Sample standard deviation (n - 1); 0 for a single value.
double StdDev(std::span<const double> values);

struct MedianCi {
  double median = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Percentile bootstrap of the median. Inputs are sorted first so the result
// does not depend on their order. Requires resamples >= 1000.
MedianCi MedianWithCi(std::span<const double> values, int resamples, Rng& rng);

struct MannWhitneyResult {
  double u = 0.0;  // U of the first sample
  double p_two_sided = 1.0;
  bool exact = false;
};

// Exact null distribution when the smaller sample has at most 8 values and
// there are no ties; otherwise the tie- and continuity-corrected normal
// approximation.
MannWhitneyResult MannWhitneyU(std::span<const double> a, std::span<const double> b);

double Bonferroni(double p, int comparisons);

struct ComparisonResult {
  Treatment first{};
  Treatment second{};
  double u = 0.0;
  double p_raw = 1.0;
  double p_bonferroni = 1.0;

  std::string PairName() const;  // e.g. "dc_vs_control"
};

struct MetricSummary {
  Treatment treatment{};
  std::string metric;  // "min_env" or "max_env"
  MedianCi ci;
  double stddev = 0.0;
  int n_runs = 0;
};

struct SummaryTable {
  std::vector<MetricSummary> rows;
  std::vector<ComparisonResult> comparisons;
};

// Median/CI of min_env and max_env per treatment, plus Mann-Whitney tests
// on min_env for every available treatment pair, Bonferroni-corrected over
// the number of pairs compared. Every treatment in `required` must have at
// least one summary.
SummaryTable SummarizeTreatments(std::span<const ChampionSummary> summaries,
                                 std::span<const Treatment> required, std::uint64_t seed);

// Per-generation medians across runs, for plotting against either the
// generation index or the shared simulation budget.
struct RunTrace {
  Treatment treatment{};
  std::uint64_t seed = 0;
  std::vector<GenerationStats> generations;
};

struct GenerationalRow {
  Treatment treatment{};
  int generation = 0;
  std::uint64_t evaluations = 0;  // simulations spent by the end of this generation
  double champion_fitness = 0.0;
  double min_env = 0.0;
  double max_env = 0.0;
  double compression_distance = 0.0;
  int n_runs = 0;
};

// Rows ordered by treatment then generation. A generation is reported for as
// many runs as reached it.
std::vector<GenerationalRow> GenerationalMedians(std::span<const RunTrace> runs);

}  // namespace devcomp

#endif  // DEVCOMP_ANALYSIS_HPP_
