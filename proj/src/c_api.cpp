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

#include "devcomp/devcomp.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "analysis.hpp"
#include "environment.hpp"
#include "error.hpp"
#include "evolution.hpp"
#include "experiment.hpp"
#include "io.hpp"

struct devcomp_genome {
  devcomp::GenomeTensor genome;
};

struct devcomp_run_log {
  devcomp::RunLog log;
};

struct devcomp_plan {
  devcomp::ExperimentPlan plan;
};

namespace {

thread_local std::string g_last_error;

devcomp_status Fail(devcomp_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs body, mapping the core's exceptions onto status codes.
template <typename Body>
devcomp_status Guard(Body&& body) {
  try {
    return body();
  } catch (const devcomp::ContractViolation& e) {
    return Fail(DEVCOMP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const devcomp::IoError& e) {
    return Fail(DEVCOMP_ERR_IO, e.what());
  } catch (const devcomp::InternalError& e) {
    return Fail(DEVCOMP_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(DEVCOMP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(DEVCOMP_ERR_UNKNOWN, e.what());
  } catch (...) {
    return Fail(DEVCOMP_ERR_UNKNOWN, "unknown exception");
  }
}

devcomp_status NullArg(const char* what) {
  return Fail(DEVCOMP_ERR_INVALID_ARGUMENT, std::string(what) + " must not be NULL");
}

devcomp::Treatment ToTreatment(devcomp_treatment t) {
  switch (t) {
    case DEVCOMP_TREATMENT_DC: return devcomp::Treatment::kDc;
    case DEVCOMP_TREATMENT_CONTROL: return devcomp::Treatment::kControl;
    case DEVCOMP_TREATMENT_RANDOM_SEARCH: return devcomp::Treatment::kRandomSearch;
    case DEVCOMP_TREATMENT_REVERSE_DC: return devcomp::Treatment::kReverseDc;
  }
  throw devcomp::ContractViolation("unknown treatment code " + std::to_string(static_cast<int>(t)));
}

devcomp::ScheduleMode ToMode(devcomp_schedule_mode m) {
  switch (m) {
    case DEVCOMP_MODE_DEVELOPMENTAL: return devcomp::ScheduleMode::kDevelopmental;
    case DEVCOMP_MODE_NON_DEVELOPMENTAL: return devcomp::ScheduleMode::kNonDevelopmental;
    case DEVCOMP_MODE_REVERSE_DEVELOPMENTAL: return devcomp::ScheduleMode::kReverseDevelopmental;
    case DEVCOMP_MODE_STATIC: return devcomp::ScheduleMode::kStatic;
  }
  throw devcomp::ContractViolation("unknown schedule mode code " + std::to_string(static_cast<int>(m)));
}

const devcomp::GenerationStats& StatsAt(const devcomp_run_log* log, int generation) {
  devcomp::Require(generation >= 1 && generation <= static_cast<int>(log->log.generations.size()),
                   "generation " + std::to_string(generation) + " out of range");
  return log->log.generations[static_cast<std::size_t>(generation - 1)].stats;
}

}  // namespace

extern "C" {

const char* devcomp_version(void) { return "1.0.0"; }

const char* devcomp_last_error(void) { return g_last_error.c_str(); }

const char* devcomp_treatment_name(devcomp_treatment treatment) {
  switch (treatment) {
    case DEVCOMP_TREATMENT_DC: return "dc";
    case DEVCOMP_TREATMENT_CONTROL: return "control";
    case DEVCOMP_TREATMENT_RANDOM_SEARCH: return "random_search";
    case DEVCOMP_TREATMENT_REVERSE_DC: return "reverse_dc";
  }
  return "unknown";
}

devcomp_status devcomp_genome_create_zero(int env_count, devcomp_genome** out) {
  if (!out) return NullArg("out");
  return Guard([&] {
    *out = new devcomp_genome{devcomp::GenomeTensor(env_count)};
    return DEVCOMP_OK;
  });
}

devcomp_status devcomp_genome_create_random(int env_count, uint64_t seed, devcomp_genome** out) {
  if (!out) return NullArg("out");
  return Guard([&] {
    devcomp::Require(env_count >= 1, "env_count must be >= 1");
    devcomp::Rng rng = devcomp::MakeRng(seed);
    *out = new devcomp_genome{devcomp::RandomGenome(env_count, rng)};
    return DEVCOMP_OK;
  });
}

void devcomp_genome_destroy(devcomp_genome* genome) { delete genome; }

int devcomp_genome_env_count(const devcomp_genome* genome) {
  return genome ? genome->genome.env_count() : -1;
}

devcomp_status devcomp_genome_get_weight(const devcomp_genome* genome, int sheet, int sensor,
                                         int motor, double* out) {
  if (!genome) return NullArg("genome");
  if (!out) return NullArg("out");
  return Guard([&] {
    devcomp::Require(sensor >= 0 && motor >= 0, "negative sensor or motor index");
    *out = genome->genome.sheet(sheet).at(static_cast<std::size_t>(sensor),
                                          static_cast<std::size_t>(motor));
    return DEVCOMP_OK;
  });
}

devcomp_status devcomp_genome_set_weight(devcomp_genome* genome, int sheet, int sensor, int motor,
                                         double weight) {
  if (!genome) return NullArg("genome");
  return Guard([&] {
    devcomp::Require(sensor >= 0 && motor >= 0, "negative sensor or motor index");
    genome->genome.sheet(sheet).set(static_cast<std::size_t>(sensor),
                                    static_cast<std::size_t>(motor), weight);
    return DEVCOMP_OK;
  });
}

devcomp_status devcomp_genome_compression_distance(const devcomp_genome* genome, double* out) {
  if (!genome) return NullArg("genome");
  if (!out) return NullArg("out");
  return Guard([&] {
    *out = devcomp::CompressionDistance(genome->genome);
    return DEVCOMP_OK;
  });
}

devcomp_status devcomp_genome_mutate(devcomp_genome* genome, devcomp_treatment treatment,
                                     uint64_t seed) {
  if (!genome) return NullArg("genome");
  return Guard([&] {
    const auto sheets = devcomp::MutableSheets(ToTreatment(treatment), genome->genome.env_count());
    devcomp::Rng rng = devcomp::MakeRng(seed);
    genome->genome = devcomp::Mutate(genome->genome, sheets, rng);
    return DEVCOMP_OK;
  });
}

devcomp_status devcomp_genome_evaluate(const devcomp_genome* genome, devcomp_treatment treatment,
                                       int horizon, double* fitness, double* env_nondev,
                                       uint64_t* sim_calls) {
  if (!genome) return NullArg("genome");
  if (!fitness) return NullArg("fitness");
  return Guard([&] {
    const auto t = ToTreatment(treatment);
    const int env_count = genome->genome.env_count();
    devcomp::Require(env_count <= 4, "genome has more targets than standard environments");
    const auto envs = devcomp::StandardEnvironments(env_count, horizon);
    devcomp::Individual ind;
    ind.genome = genome->genome;
    std::uint64_t calls = 0;
    ind = devcomp::Evaluate(std::move(ind), envs, t, devcomp::SurrogateWorld{}, &calls);
    *fitness = ind.fitness;
    if (env_nondev) {
      const auto mode = devcomp::ReportingMode(t);
      for (int e = 1; e <= env_count; ++e) env_nondev[e - 1] = ind.records.at({e, mode}).mean_light;
    }
    if (sim_calls) *sim_calls = calls;
    return DEVCOMP_OK;
  });
}

devcomp_status devcomp_genome_write_trajectory(const devcomp_genome* genome, int env_index,
                                               devcomp_schedule_mode mode, int horizon,
                                               const char* path) {
  if (!genome) return NullArg("genome");
  if (!path) return NullArg("path");
  return Guard([&] {
    const int env_count = genome->genome.env_count();
    devcomp::Require(env_count <= 4, "genome has more targets than standard environments");
    const auto envs = devcomp::StandardEnvironments(env_count, horizon);
    devcomp::Require(env_index >= 1 && env_index <= env_count, "env_index out of range");
    const auto schedule = devcomp::ScheduleFor(genome->genome, env_index, ToMode(mode), horizon);
    std::ostringstream csv;
    devcomp::WriteTrajectoryCsv(csv, schedule, envs[static_cast<std::size_t>(env_index - 1)]);
    devcomp::WriteFileAtomically(path, csv.str());
    return DEVCOMP_OK;
  });
}

devcomp_status devcomp_champion_load(const char* path, devcomp_genome** out,
                                     devcomp_champion_info* info) {
  if (!path) return NullArg("path");
  if (!out) return NullArg("out");
  return Guard([&] {
    auto champion = devcomp::ReadChampionFile(path);
    if (info) {
      std::memset(info, 0, sizeof *info);
      const auto name = devcomp::TreatmentName(champion.treatment);
      std::memcpy(info->treatment, name.data(), std::min(name.size(), sizeof info->treatment - 1));
      info->seed = champion.seed;
      info->generation = champion.generation;
      info->fitness = champion.fitness;
    }
    *out = new devcomp_genome{std::move(champion.genome)};
    return DEVCOMP_OK;
  });
}

void devcomp_run_config_init(devcomp_run_config* config) {
  if (!config) return;
  const devcomp::TreatmentConfig defaults;
  config->treatment = DEVCOMP_TREATMENT_DC;
  config->env_count = defaults.env_count;
  config->generations = defaults.generations;
  config->population_size = defaults.population_size;
  config->horizon = defaults.horizon;
  config->seed = defaults.seed;
  config->eval_threads = defaults.eval_threads;
}

devcomp_status devcomp_run_treatment(const devcomp_run_config* config, devcomp_run_log** out) {
  if (!config) return NullArg("config");
  if (!out) return NullArg("out");
  return Guard([&] {
    devcomp::TreatmentConfig c;
    c.treatment = ToTreatment(config->treatment);
    c.env_count = config->env_count;
    c.generations = config->generations;
    c.population_size = config->population_size;
    c.horizon = config->horizon;
    c.seed = config->seed;
    c.eval_threads = config->eval_threads;
    *out = new devcomp_run_log{devcomp::RunTreatment(c)};
    return DEVCOMP_OK;
  });
}

void devcomp_run_log_destroy(devcomp_run_log* log) { delete log; }

int devcomp_run_log_generation_count(const devcomp_run_log* log) {
  return log ? static_cast<int>(log->log.generations.size()) : -1;
}

uint64_t devcomp_run_log_sim_calls(const devcomp_run_log* log) {
  return log ? log->log.sim_calls : 0;
}

devcomp_status devcomp_run_log_champion_fitness(const devcomp_run_log* log, int generation,
                                                double* out) {
  if (!log) return NullArg("log");
  if (!out) return NullArg("out");
  return Guard([&] {
    *out = StatsAt(log, generation).champion_fitness;
    return DEVCOMP_OK;
  });
}

devcomp_status devcomp_run_log_min_env(const devcomp_run_log* log, int generation, double* out) {
  if (!log) return NullArg("log");
  if (!out) return NullArg("out");
  return Guard([&] {
    *out = StatsAt(log, generation).min_env;
    return DEVCOMP_OK;
  });
}

devcomp_status devcomp_run_log_compression_distance(const devcomp_run_log* log, int generation,
                                                    double* out) {
  if (!log) return NullArg("log");
  if (!out) return NullArg("out");
  return Guard([&] {
    *out = StatsAt(log, generation).compression_distance;
    return DEVCOMP_OK;
  });
}

devcomp_status devcomp_run_log_write_csv(const devcomp_run_log* log, const char* path) {
  if (!log) return NullArg("log");
  if (!path) return NullArg("path");
  return Guard([&] {
    std::ostringstream csv;
    devcomp::WriteRunCsv(csv, log->log);
    devcomp::WriteFileAtomically(path, csv.str());
    return DEVCOMP_OK;
  });
}

devcomp_status devcomp_plan_create(devcomp_plan** out) {
  if (!out) return NullArg("out");
  return Guard([&] {
    auto* p = new devcomp_plan{};
    devcomp::ApplyProfile(p->plan, "desk");
    *out = p;
    return DEVCOMP_OK;
  });
}

void devcomp_plan_destroy(devcomp_plan* plan) { delete plan; }

devcomp_status devcomp_plan_set(devcomp_plan* plan, const char* key, const char* value) {
  if (!plan) return NullArg("plan");
  if (!key) return NullArg("key");
  if (!value) return NullArg("value");
  return Guard([&] {
    devcomp::ApplySetting(plan->plan, key, value);
    return DEVCOMP_OK;
  });
}

devcomp_status devcomp_plan_load_file(devcomp_plan* plan, const char* path) {
  if (!plan) return NullArg("plan");
  if (!path) return NullArg("path");
  return Guard([&] {
    devcomp::LoadPlanFile(plan->plan, path);
    return DEVCOMP_OK;
  });
}

devcomp_status devcomp_plan_describe(const devcomp_plan* plan, char* buf, size_t size,
                                     size_t* needed) {
  if (!plan) return NullArg("plan");
  return Guard([&] {
    std::string json = plan->plan.ToJson();
    // The output directory is not part of the manifest; show it here.
    json.insert(json.find('{') + 1, "\n  \"out\": \"" + plan->plan.output_dir.string() + "\",");
    if (needed) *needed = json.size() + 1;
    if (buf && size > 0) {
      const std::size_t n = std::min(size - 1, json.size());
      std::memcpy(buf, json.data(), n);
      buf[n] = '\0';
    }
    return DEVCOMP_OK;
  });
}

devcomp_status devcomp_plan_run(const devcomp_plan* plan, devcomp_progress_fn progress,
                                void* user_data, int* failed_cells) {
  if (!plan) return NullArg("plan");
  return Guard([&] {
    devcomp::ProgressCallback cb;
    if (progress) cb = [&](const std::string& msg) { progress(msg.c_str(), user_data); };
    const auto report = devcomp::RunExperiment(plan->plan, cb);
    if (failed_cells) *failed_cells = static_cast<int>(report.failures.size());
    if (!report.failures.empty()) {
      return Fail(DEVCOMP_ERR_PARTIAL, std::to_string(report.failures.size()) +
                                           " failure(s); first: " + report.failures.front());
    }
    return DEVCOMP_OK;
  });
}

devcomp_status devcomp_summarize(const char* dir) {
  if (!dir) return NullArg("dir");
  return Guard([&] {
    devcomp::Summarize(dir);
    return DEVCOMP_OK;
  });
}

}  // extern "C"
