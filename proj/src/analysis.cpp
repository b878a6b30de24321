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

#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "error.hpp"
#include "evolution.hpp"

namespace devcomp {

namespace {

constexpr int kExactMaxSmallSample = 8;

std::vector<double> Sorted(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  return v;
}

double MedianOfSorted(const std::vector<double>& v) {
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Linear interpolation between order statistics (Hyndman-Fan type 7).
double QuantileOfSorted(const std::vector<double>& v, double q) {
  const double h = (static_cast<double>(v.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

// Midranks of the pooled sample; returns rank sum of `a` and the tie term
// sum(t^3 - t) over tie groups.
std::pair<double, double> RankSumAndTies(std::span<const double> a, std::span<const double> b) {
  std::vector<std::pair<double, bool>> pooled;
  pooled.reserve(a.size() + b.size());
  for (double x : a) pooled.emplace_back(x, true);
  for (double x : b) pooled.emplace_back(x, false);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  double rank_sum = 0.0;
  double ties = 0.0;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j].first == pooled[i].first) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].second) rank_sum += midrank;
    }
    const auto t = static_cast<double>(j - i);
    ties += t * t * t - t;
    i = j;
  }
  return {rank_sum, ties};
}

// Number of rank assignments giving each U value, for samples of sizes m
// and n: the coefficients of the Gaussian binomial [m+n choose m]_q, built
// up as prod_{i=1..m} (1 - q^{n+i}) / (1 - q^i).
std::vector<double> ExactUCounts(std::size_t m, std::size_t n) {
  std::vector<double> c(m * n + 1, 0.0);
  c[0] = 1.0;
  for (std::size_t i = 1; i <= m; ++i) {
    const std::size_t up = n + i;
    for (std::size_t k = c.size(); k-- > up;) c[k] -= c[k - up];
    for (std::size_t k = i; k < c.size(); ++k) c[k] += c[k - i];
  }
  return c;
}

}  // namespace

ChampionSummary OverallRunChampion(std::span<const GenerationStats> generations,
                                   Treatment treatment, std::uint64_t seed) {
  Require(!generations.empty(), "OverallRunChampion: empty run log");
  const GenerationStats* best = &generations.front();
  for (const auto& g : generations) {
    if (g.champion_fitness > best->champion_fitness) best = &g;
  }
  ChampionSummary s;
  s.seed = seed;
  s.treatment = treatment;
  s.generation = best->generation;
  s.fitness = best->champion_fitness;
  s.env_nondev = best->env_nondev;
  s.min_env = best->min_env;
  s.max_env = best->max_env;
  s.compression_distance = best->compression_distance;
  return s;
}

ChampionSummary OverallRunChampion(const RunLog& log) {
  std::vector<GenerationStats> stats;
  stats.reserve(log.generations.size());
  for (const auto& g : log.generations) stats.push_back(g.stats);
  return OverallRunChampion(stats, log.config.treatment, log.config.seed);
}

double CompressionDistance(const GenomeTensor& genome) {
  const auto& base = genome.base().data();
  double total = 0.0;
  for (int e = 1; e <= genome.env_count(); ++e) {
    const auto& target = genome.sheet(e).data();
    double sq = 0.0;
    for (std::size_t k = 0; k < kSynapseCount; ++k) {
      const double d = base[k] - target[k];
      sq += d * d;
    }
    total += std::sqrt(sq);
  }
  return total / genome.env_count();
}

double Median(std::span<const double> values) {
  Require(!values.empty(), "Median: empty input");
  return MedianOfSorted(Sorted(values));
}

double StdDev(std::span<const double> values) {
  Require(!values.empty(), "StdDev: empty input");
  if (values.size() == 1) return 0.0;
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

MedianCi MedianWithCi(std::span<const double> values, int resamples, Rng& rng) {
  Require(!values.empty(), "MedianWithCi: empty input");
  Require(resamples >= 1000, "MedianWithCi: need at least 1000 resamples");
  const auto sorted = Sorted(values);
  MedianCi out;
  out.median = MedianOfSorted(sorted);

  std::uniform_int_distribution<std::size_t> pick(0, sorted.size() - 1);
  std::vector<double> draw(sorted.size());
  std::vector<double> medians(static_cast<std::size_t>(resamples));
  for (auto& m : medians) {
    for (auto& d : draw) d = sorted[pick(rng)];
    std::sort(draw.begin(), draw.end());
    m = MedianOfSorted(draw);
  }
  std::sort(medians.begin(), medians.end());
  out.lo = QuantileOfSorted(medians, 0.025);
  out.hi = QuantileOfSorted(medians, 0.975);
  return out;
}

MannWhitneyResult MannWhitneyU(std::span<const double> a, std::span<const double> b) {
  Require(!a.empty() && !b.empty(), "MannWhitneyU: both samples must be nonempty");
  const auto n1 = static_cast<double>(a.size());
  const auto n2 = static_cast<double>(b.size());
  const auto [rank_sum, ties] = RankSumAndTies(a, b);

  MannWhitneyResult r;
  r.u = rank_sum - n1 * (n1 + 1.0) / 2.0;

  if (ties == 0.0 && std::min(a.size(), b.size()) <= kExactMaxSmallSample) {
    const auto counts = ExactUCounts(a.size(), b.size());
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    const auto u = static_cast<std::size_t>(std::llround(r.u));
    const double le = std::accumulate(counts.begin(), counts.begin() + u + 1, 0.0);
    const double ge = std::accumulate(counts.begin() + u, counts.end(), 0.0);
    r.p_two_sided = std::min(1.0, 2.0 * std::min(le, ge) / total);
    r.exact = true;
    return r;
  }

  const double n = n1 + n2;
  const double mean = n1 * n2 / 2.0;
  const double var = n1 * n2 / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
  if (var <= 0.0) {
    r.p_two_sided = 1.0;  // every value tied
    return r;
  }
  const double z = std::max(0.0, std::abs(r.u - mean) - 0.5) / std::sqrt(var);
  r.p_two_sided = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return r;
}

double Bonferroni(double p, int comparisons) {
  Require(p >= 0.0 && p <= 1.0, "Bonferroni: p outside [0, 1]");
  Require(comparisons >= 1, "Bonferroni: need at least one comparison");
  return std::min(1.0, p * comparisons);
}

std::string ComparisonResult::PairName() const {
  return std::string(TreatmentName(first)) + "_vs_" + std::string(TreatmentName(second));
}

SummaryTable SummarizeTreatments(std::span<const ChampionSummary> summaries,
                                 std::span<const Treatment> required, std::uint64_t seed) {
  Require(!summaries.empty(), "SummarizeTreatments: no run champions");
  std::map<Treatment, std::vector<double>> min_env;
  std::map<Treatment, std::vector<double>> max_env;
  for (const auto& s : summaries) {
    min_env[s.treatment].push_back(s.min_env);
    max_env[s.treatment].push_back(s.max_env);
  }
  for (Treatment t : required) {
    Require(min_env.count(t) == 1, "SummarizeTreatments: no runs for treatment " +
                                       std::string(TreatmentName(t)));
  }

  SummaryTable table;
  for (Treatment t : kAllTreatments) {
    if (!min_env.count(t)) continue;
    for (const auto& [metric, values] :
         {std::pair<std::string, const std::vector<double>*>{"min_env", &min_env[t]},
          std::pair<std::string, const std::vector<double>*>{"max_env", &max_env[t]}}) {
      Rng rng = MakeRng(seed, {HashName(TreatmentName(t)), HashName(metric)});
      MetricSummary row;
      row.treatment = t;
      row.metric = metric;
      row.ci = MedianWithCi(*values, kBootstrapResamples, rng);
      row.stddev = StdDev(Sorted(*values));
      row.n_runs = static_cast<int>(values->size());
      table.rows.push_back(row);
    }
  }

  static constexpr std::pair<Treatment, Treatment> kPairs[] = {
      {Treatment::kDc, Treatment::kControl},
      {Treatment::kDc, Treatment::kRandomSearch},
      {Treatment::kRandomSearch, Treatment::kControl},
      {Treatment::kReverseDc, Treatment::kDc},
      {Treatment::kReverseDc, Treatment::kControl},
      {Treatment::kReverseDc, Treatment::kRandomSearch},
  };
  for (const auto& [first, second] : kPairs) {
    if (!min_env.count(first) || !min_env.count(second)) continue;
    ComparisonResult c;
    c.first = first;
    c.second = second;
    const auto mw = MannWhitneyU(Sorted(min_env[first]), Sorted(min_env[second]));
    c.u = mw.u;
    c.p_raw = mw.p_two_sided;
    table.comparisons.push_back(c);
  }
  const int m = static_cast<int>(table.comparisons.size());
  for (auto& c : table.comparisons) c.p_bonferroni = Bonferroni(c.p_raw, m);
  return table;
}

std::vector<GenerationalRow> GenerationalMedians(std::span<const RunTrace> runs) {
  std::map<Treatment, std::vector<const RunTrace*>> by_treatment;
  for (const auto& r : runs) by_treatment[r.treatment].push_back(&r);
  std::vector<GenerationalRow> rows;
  for (const auto& [treatment, group] : by_treatment) {
    std::size_t longest = 0;
    for (const RunTrace* r : group) longest = std::max(longest, r->generations.size());
    for (std::size_t g = 0; g < longest; ++g) {
      std::vector<double> fitness, min_env, max_env, compression;
      std::vector<double> evaluations;
      for (const RunTrace* r : group) {
        if (g >= r->generations.size()) continue;
        const GenerationStats& s = r->generations[g];
        fitness.push_back(s.champion_fitness);
        min_env.push_back(s.min_env);
        max_env.push_back(s.max_env);
        compression.push_back(s.compression_distance);
        evaluations.push_back(static_cast<double>(s.sim_calls_cumulative));
      }
      GenerationalRow row;
      row.treatment = treatment;
      row.generation = static_cast<int>(g) + 1;
      row.evaluations = static_cast<std::uint64_t>(Median(evaluations));
      row.champion_fitness = Median(fitness);
      row.min_env = Median(min_env);
      row.max_env = Median(max_env);
      row.compression_distance = Median(compression);
      row.n_runs = static_cast<int>(fitness.size());
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace devcomp
