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

#include "io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "error.hpp"
#include "format.hpp"

namespace devcomp {

namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double ParseField(const std::string& text, const std::string& what) {
  double v = 0.0;
  if (!ParseDouble(text, v)) throw IoError("malformed " + what + " value '" + text + "'");
  return v;
}

std::uint64_t ParseCount(const std::string& text, const std::string& what) {
  std::uint64_t v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw IoError("malformed " + what + " value '" + text + "'");
  }
  return v;
}

}  // namespace

std::string RunCsvName(std::uint64_t seed, Treatment treatment) {
  return "run_" + std::to_string(seed) + "_" + std::string(TreatmentName(treatment)) + ".csv";
}

std::string ChampionFileName(std::uint64_t seed, Treatment treatment) {
  return "run_" + std::to_string(seed) + "_" + std::string(TreatmentName(treatment)) +
         "_champion.json";
}

std::optional<RunFileId> ParseRunCsvName(const std::string& filename) {
  constexpr std::string_view kPrefix = "run_";
  constexpr std::string_view kExt = ".csv";
  std::string_view name = filename;
  if (name.size() <= kPrefix.size() + kExt.size() || !name.starts_with(kPrefix) ||
      !name.ends_with(kExt)) {
    return std::nullopt;
  }
  name.remove_prefix(kPrefix.size());
  name.remove_suffix(kExt.size());
  const auto sep = name.find('_');
  if (sep == std::string_view::npos) return std::nullopt;
  RunFileId id;
  auto res = std::from_chars(name.data(), name.data() + sep, id.seed);
  if (res.ec != std::errc() || res.ptr != name.data() + sep) return std::nullopt;
  auto t = ParseTreatment(name.substr(sep + 1));
  if (!t) return std::nullopt;
  id.treatment = *t;
  return id;
}

void WriteRunCsv(std::ostream& out, const RunLog& log) {
  const int envs = log.config.env_count;
  out << "generation,champion_fitness";
  for (int e = 1; e <= envs; ++e) out << ",env" << e << "_nondev";
  out << ",min_env,max_env,compression_distance,sim_calls_cumulative\n";
  for (const auto& g : log.generations) {
    const auto& s = g.stats;
    out << s.generation << ',' << FormatDouble(s.champion_fitness);
    for (double v : s.env_nondev) out << ',' << FormatDouble(v);
    out << ',' << FormatDouble(s.min_env) << ',' << FormatDouble(s.max_env) << ','
        << FormatDouble(s.compression_distance) << ',' << s.sim_calls_cumulative << '\n';
  }
}

std::vector<GenerationStats> ReadRunCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("run CSV is empty");
  const auto header = SplitCsvLine(line);
  // generation, champion_fitness, E env columns, then four trailing columns.
  if (header.size() < 7 || header[0] != "generation" || header[1] != "champion_fitness" ||
      header[header.size() - 4] != "min_env" || header[header.size() - 1] != "sim_calls_cumulative") {
    throw IoError("run CSV header not recognized: " + line);
  }
  const std::size_t envs = header.size() - 6;
  std::vector<GenerationStats> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = SplitCsvLine(line);
    if (f.size() != header.size()) throw IoError("run CSV row has wrong column count: " + line);
    GenerationStats s;
    s.generation = static_cast<int>(ParseCount(f[0], "generation"));
    s.champion_fitness = ParseField(f[1], "champion_fitness");
    for (std::size_t e = 0; e < envs; ++e) s.env_nondev.push_back(ParseField(f[2 + e], "env"));
    s.min_env = ParseField(f[2 + envs], "min_env");
    s.max_env = ParseField(f[3 + envs], "max_env");
    s.compression_distance = ParseField(f[4 + envs], "compression_distance");
    s.sim_calls_cumulative = ParseCount(f[5 + envs], "sim_calls_cumulative");
    rows.push_back(std::move(s));
  }
  return rows;
}

std::vector<GenerationStats> ReadRunCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return ReadRunCsv(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

std::string ChampionToJson(const ChampionFile& champion) {
  nlohmann::ordered_json j;
  j["treatment"] = TreatmentName(champion.treatment);
  j["seed"] = champion.seed;
  j["env_count"] = champion.genome.env_count();
  j["generation"] = champion.generation;
  j["fitness"] = champion.fitness;
  auto sheets = nlohmann::ordered_json::array();
  for (int k = 0; k < champion.genome.sheet_count(); ++k) {
    const auto& w = champion.genome.sheet(k).data();
    sheets.push_back(std::vector<double>(w.begin(), w.end()));
  }
  j["sheets"] = std::move(sheets);
  return j.dump(1) + "\n";
}

ChampionFile ChampionFromJson(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ChampionFile c;
    const auto treatment = ParseTreatment(j.at("treatment").get<std::string>());
    if (!treatment) throw IoError("unknown treatment in champion file");
    c.treatment = *treatment;
    c.seed = j.at("seed").get<std::uint64_t>();
    c.generation = j.at("generation").get<int>();
    c.fitness = j.at("fitness").get<double>();
    std::vector<SynapseMatrix> sheets;
    for (const auto& sheet : j.at("sheets")) {
      const auto w = sheet.get<std::vector<double>>();
      if (w.size() != kSynapseCount) throw IoError("champion sheet must hold 40 weights");
      SynapseMatrix::Storage s;
      std::copy(w.begin(), w.end(), s.begin());
      sheets.emplace_back(s);
    }
    c.genome = GenomeTensor(std::move(sheets));
    if (j.at("env_count").get<int>() != c.genome.env_count()) {
      throw IoError("env_count does not match the number of sheets");
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed champion file: ") + e.what());
  } catch (const ContractViolation& e) {
    throw IoError(std::string("invalid champion genome: ") + e.what());
  }
}

ChampionFile ReadChampionFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return ChampionFromJson(buf.str());
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void WriteSummaryCsv(std::ostream& out, const SummaryTable& table) {
  out << "treatment,metric,median,ci_lo,ci_hi,stddev,n_runs\n";
  for (const auto& r : table.rows) {
    out << TreatmentName(r.treatment) << ',' << r.metric << ',' << FormatDouble(r.ci.median)
        << ',' << FormatDouble(r.ci.lo) << ',' << FormatDouble(r.ci.hi) << ','
        << FormatDouble(r.stddev) << ',' << r.n_runs << '\n';
  }
}

void WriteComparisonsCsv(std::ostream& out, const SummaryTable& table) {
  out << "pair,U,p_raw,p_bonferroni\n";
  for (const auto& c : table.comparisons) {
    out << c.PairName() << ',' << FormatDouble(c.u) << ',' << FormatDouble(c.p_raw) << ','
        << FormatDouble(c.p_bonferroni) << '\n';
  }
}

void WriteGenerationalCsv(std::ostream& out, std::span<const GenerationalRow> rows) {
  out << "treatment,generation,evaluations,champion_fitness,min_env,max_env,"
         "compression_distance,n_runs\n";
  for (const auto& r : rows) {
    out << TreatmentName(r.treatment) << ',' << r.generation << ',' << r.evaluations << ','
        << FormatDouble(r.champion_fitness) << ',' << FormatDouble(r.min_env) << ','
        << FormatDouble(r.max_env) << ',' << FormatDouble(r.compression_distance) << ','
        << r.n_runs << '\n';
  }
}

void WriteFileAtomically(const std::filesystem::path& path, const std::string& contents) {
  auto partial = path;
  partial += std::string(kPartialSuffix);
  {
    std::ofstream out(partial, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + partial.string());
    out << contents;
    out.flush();
    if (!out) throw IoError("write failed for " + partial.string());
  }
  std::error_code ec;
  std::filesystem::rename(partial, path, ec);
  if (ec) throw IoError("cannot rename " + partial.string() + " to " + path.string() + ": " +
                        ec.message());
}

}  // namespace devcomp
