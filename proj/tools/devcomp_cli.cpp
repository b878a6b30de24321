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

// devcomp: batch experiment runner.
//
//   devcomp run [--profile desk|paper] [--config FILE] [--treatment dc,control]
//               [--envs 2,3] [--runs N] [--generations G] [--pop-size P]
//               [--timesteps T] [--seed S] [--out DIR] [--workers N]
//   devcomp summarize DIR
//   devcomp inspect CHAMPION.json [--trajectory-dir DIR]

#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "devcomp/devcomp.h"

namespace {

int Die(const std::string& context) {
  std::fprintf(stderr, "devcomp: %s: %s\n", context.c_str(), devcomp_last_error());
  return 1;
}

struct PlanDeleter {
  void operator()(devcomp_plan* p) const { devcomp_plan_destroy(p); }
};
struct GenomeDeleter {
  void operator()(devcomp_genome* g) const { devcomp_genome_destroy(g); }
};

void PrintProgress(const char* message, void*) { std::fprintf(stderr, "%s\n", message); }

struct RunOptions {
  std::optional<std::string> profile;
  std::optional<std::string> config;
  // Flag name -> value, applied after the profile and the config file.
  std::vector<std::pair<std::string, std::optional<std::string>>> overrides{
      {"treatment", {}}, {"envs", {}},      {"runs", {}},    {"generations", {}},
      {"pop_size", {}},  {"timesteps", {}}, {"seed", {}},    {"out", {}},
      {"workers", {}},   {"eval_threads", {}}};
  bool quiet = false;
};

int CmdRun(const RunOptions& opts) {
  devcomp_plan* raw = nullptr;
  if (devcomp_plan_create(&raw) != DEVCOMP_OK) return Die("plan");
  std::unique_ptr<devcomp_plan, PlanDeleter> plan(raw);

  if (opts.profile && devcomp_plan_set(plan.get(), "profile", opts.profile->c_str()) != DEVCOMP_OK) {
    return Die("--profile");
  }
  if (opts.config && devcomp_plan_load_file(plan.get(), opts.config->c_str()) != DEVCOMP_OK) {
    return Die("--config");
  }
  for (const auto& [key, value] : opts.overrides) {
    if (value && devcomp_plan_set(plan.get(), key.c_str(), value->c_str()) != DEVCOMP_OK) {
      return Die("--" + key);
    }
  }

  std::size_t needed = 0;
  devcomp_plan_describe(plan.get(), nullptr, 0, &needed);
  std::string description(needed, '\0');
  devcomp_plan_describe(plan.get(), description.data(), description.size(), nullptr);
  if (!opts.quiet) std::fprintf(stderr, "plan: %s", description.c_str());

  int failed = 0;
  const devcomp_status st =
      devcomp_plan_run(plan.get(), opts.quiet ? nullptr : PrintProgress, nullptr, &failed);
  if (st != DEVCOMP_OK) return Die("run");
  return 0;
}

int CmdSummarize(const std::string& dir) {
  if (devcomp_summarize(dir.c_str()) != DEVCOMP_OK) return Die("summarize");
  std::error_code ec;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir, ec)) {
    if (entry.path().filename() == "summary.csv") std::printf("%s\n", entry.path().c_str());
  }
  return 0;
}

int CmdInspect(const std::string& path, const std::optional<std::string>& trajectory_dir,
               int timesteps) {
  devcomp_genome* raw = nullptr;
  devcomp_champion_info info{};
  if (devcomp_champion_load(path.c_str(), &raw, &info) != DEVCOMP_OK) return Die(path);
  std::unique_ptr<devcomp_genome, GenomeDeleter> genome(raw);

  const int envs = devcomp_genome_env_count(genome.get());
  std::printf("treatment: %s\nseed: %llu\ngeneration: %d\nfitness: %.17g\nenv_count: %d\n",
              info.treatment, static_cast<unsigned long long>(info.seed), info.generation,
              info.fitness, envs);
  for (int k = 0; k <= envs; ++k) {
    std::printf("sheet %d%s\n", k, k == 0 ? " (base)" : "");
    for (int s = 0; s < 5; ++s) {
      std::printf(" ");
      for (int m = 0; m < 8; ++m) {
        double w = 0.0;
        devcomp_genome_get_weight(genome.get(), k, s, m, &w);
        std::printf(" %+.6f", w);
      }
      std::printf("\n");
    }
  }
  double distance = 0.0;
  if (devcomp_genome_compression_distance(genome.get(), &distance) != DEVCOMP_OK) {
    return Die("compression distance");
  }
  std::printf("compression_distance: %.17g\n", distance);

  if (trajectory_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*trajectory_dir, ec);
    const bool developmental = std::string(info.treatment) == "dc" ||
                               std::string(info.treatment) == "reverse_dc";
    for (int e = 1; e <= envs; ++e) {
      std::vector<std::pair<devcomp_schedule_mode, const char*>> modes;
      if (developmental) {
        modes.emplace_back(std::string(info.treatment) == "dc"
                               ? DEVCOMP_MODE_DEVELOPMENTAL
                               : DEVCOMP_MODE_REVERSE_DEVELOPMENTAL,
                           "dev");
        modes.emplace_back(DEVCOMP_MODE_NON_DEVELOPMENTAL, "nondev");
      } else {
        modes.emplace_back(DEVCOMP_MODE_STATIC, "static");
      }
      for (const auto& [mode, tag] : modes) {
        const auto out = std::filesystem::path(*trajectory_dir) /
                         ("trajectory_env" + std::to_string(e) + "_" + tag + ".csv");
        if (devcomp_genome_write_trajectory(genome.get(), e, mode, timesteps,
                                            out.string().c_str()) != DEVCOMP_OK) {
          return Die(out.string());
        }
        std::printf("wrote %s\n", out.string().c_str());
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Developmental compression neuroevolution harness"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(devcomp_version()));

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Execute a seeded experiment plan");
  run->add_option("--profile", run_opts.profile, "desk or paper");
  run->add_option("--config", run_opts.config, "key = value configuration file");
  auto flag = [&](const char* name, std::size_t index, const char* help) {
    run->add_option(name, run_opts.overrides[index].second, help);
  };
  flag("--treatment", 0, "comma list of dc, control, random_search, reverse_dc");
  flag("--envs", 1, "comma list of environment counts (2, 3, 4)");
  flag("--runs", 2, "runs per (treatment, E) cell");
  flag("--generations", 3, "G; developmental treatments run G/2");
  flag("--pop-size", 4, "population size P");
  flag("--timesteps", 5, "simulation horizon T");
  flag("--seed", 6, "master seed");
  flag("--out", 7, "output directory");
  flag("--workers", 8, "parallel run cells");
  flag("--eval-threads", 9, "threads per generation for child evaluation");
  run->add_flag("--quiet", run_opts.quiet, "suppress progress output");

  std::string summarize_dir;
  auto* summarize = app.add_subcommand("summarize", "Rebuild summary.csv, comparisons.csv and generational.csv");
  summarize->add_option("dir", summarize_dir, "output directory of a run")->required();

  std::string champion_path;
  std::optional<std::string> trajectory_dir;
  int timesteps = 1000;
  auto* inspect = app.add_subcommand("inspect", "Print a champion genome");
  inspect->add_option("champion", champion_path, "champion JSON file")->required();
  inspect->add_option("--trajectory-dir", trajectory_dir, "also dump per-step trajectories");
  inspect->add_option("--timesteps", timesteps, "horizon for trajectory dumps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::fprintf(stderr, "devcomp: %s\n", e.what());
    return 2;
  }

  if (*run) return CmdRun(run_opts);
  if (*summarize) return CmdSummarize(summarize_dir);
  if (*inspect) return CmdInspect(champion_path, trajectory_dir, timesteps);
  return 2;
}
