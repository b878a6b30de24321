/*
 * Copyright 2026 The devcomp Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the devcomp neuroevolution harness.
 *
 * Objects are opaque handles created by devcomp_*_create/load functions and
 * released with the matching *_destroy. Every fallible call returns a
 * devcomp_status; on failure devcomp_last_error() describes the problem. The
 * message is per-thread and stays valid until the next failing call on that
 * thread.
 */

#ifndef DEVCOMP_DEVCOMP_H_
#define DEVCOMP_DEVCOMP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DEVCOMP_BUILDING_LIBRARY)
#    define DEVCOMP_API __declspec(dllexport)
#  else
#    define DEVCOMP_API __declspec(dllimport)
#  endif
#else
#  define DEVCOMP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum devcomp_status {
  DEVCOMP_OK = 0,
  DEVCOMP_ERR_INVALID_ARGUMENT = 1, /* precondition violated */
  DEVCOMP_ERR_IO = 2,               /* file missing, unwritable or malformed */
  DEVCOMP_ERR_INTERNAL = 3,         /* self-check failed */
  DEVCOMP_ERR_PARTIAL = 4,          /* batch finished but some cells failed */
  DEVCOMP_ERR_UNKNOWN = 5
} devcomp_status;

typedef enum devcomp_treatment {
  DEVCOMP_TREATMENT_DC = 0,
  DEVCOMP_TREATMENT_CONTROL = 1,
  DEVCOMP_TREATMENT_RANDOM_SEARCH = 2,
  DEVCOMP_TREATMENT_REVERSE_DC = 3
} devcomp_treatment;

typedef enum devcomp_schedule_mode {
  DEVCOMP_MODE_DEVELOPMENTAL = 0,
  DEVCOMP_MODE_NON_DEVELOPMENTAL = 1,
  DEVCOMP_MODE_REVERSE_DEVELOPMENTAL = 2,
  DEVCOMP_MODE_STATIC = 3
} devcomp_schedule_mode;

typedef struct devcomp_genome devcomp_genome;
typedef struct devcomp_run_log devcomp_run_log;
typedef struct devcomp_plan devcomp_plan;

DEVCOMP_API const char* devcomp_version(void);
DEVCOMP_API const char* devcomp_last_error(void);
DEVCOMP_API const char* devcomp_treatment_name(devcomp_treatment treatment);

/* ---- genomes ---------------------------------------------------------- */

/* Sheet 0 is the base controller, sheets 1..env_count the targets. Each sheet
 * is 5 sensors x 8 motors with weights in [-1, 1]. */
DEVCOMP_API devcomp_status devcomp_genome_create_zero(int env_count, devcomp_genome** out);
DEVCOMP_API devcomp_status devcomp_genome_create_random(int env_count, uint64_t seed,
                                                        devcomp_genome** out);
DEVCOMP_API void devcomp_genome_destroy(devcomp_genome* genome);

DEVCOMP_API int devcomp_genome_env_count(const devcomp_genome* genome);
DEVCOMP_API devcomp_status devcomp_genome_get_weight(const devcomp_genome* genome, int sheet,
                                                     int sensor, int motor, double* out);
DEVCOMP_API devcomp_status devcomp_genome_set_weight(devcomp_genome* genome, int sheet,
                                                     int sensor, int motor, double weight);
DEVCOMP_API devcomp_status devcomp_genome_compression_distance(const devcomp_genome* genome,
                                                               double* out);

/* Applies one mutation in place, restricted to the sheets the treatment may
 * change. */
DEVCOMP_API devcomp_status devcomp_genome_mutate(devcomp_genome* genome,
                                                 devcomp_treatment treatment, uint64_t seed);

/* Scores a genome the way the treatment would in the standard environments
 * (one per target sheet). env_nondev, when non-NULL, receives env_count
 * non-developmental scores. sim_calls, when non-NULL, receives the number of
 * simulations issued. */
DEVCOMP_API devcomp_status devcomp_genome_evaluate(const devcomp_genome* genome,
                                                   devcomp_treatment treatment, int horizon,
                                                   double* fitness, double* env_nondev,
                                                   uint64_t* sim_calls);

/* Writes a per-step trajectory CSV for one lifetime in environment
 * env_index (1-based). */
DEVCOMP_API devcomp_status devcomp_genome_write_trajectory(const devcomp_genome* genome,
                                                           int env_index,
                                                           devcomp_schedule_mode mode,
                                                           int horizon, const char* path);

typedef struct devcomp_champion_info {
  char treatment[32];
  uint64_t seed;
  int generation;
  double fitness;
} devcomp_champion_info;

/* Loads a champion JSON file. info may be NULL. */
DEVCOMP_API devcomp_status devcomp_champion_load(const char* path, devcomp_genome** out,
                                                 devcomp_champion_info* info);

/* ---- single runs ------------------------------------------------------ */

typedef struct devcomp_run_config {
  devcomp_treatment treatment;
  int env_count;
  int generations; /* developmental treatments execute half of these */
  int population_size;
  int horizon;
  uint64_t seed;
  int eval_threads;
} devcomp_run_config;

/* Fills the defaults: dc, E=2, G=1500, P=50, T=1000, seed 0, 1 thread. */
DEVCOMP_API void devcomp_run_config_init(devcomp_run_config* config);

DEVCOMP_API devcomp_status devcomp_run_treatment(const devcomp_run_config* config,
                                                 devcomp_run_log** out);
DEVCOMP_API void devcomp_run_log_destroy(devcomp_run_log* log);
DEVCOMP_API int devcomp_run_log_generation_count(const devcomp_run_log* log);
DEVCOMP_API uint64_t devcomp_run_log_sim_calls(const devcomp_run_log* log);
DEVCOMP_API devcomp_status devcomp_run_log_champion_fitness(const devcomp_run_log* log,
                                                            int generation, double* out);
DEVCOMP_API devcomp_status devcomp_run_log_min_env(const devcomp_run_log* log, int generation,
                                                   double* out);
DEVCOMP_API devcomp_status devcomp_run_log_compression_distance(const devcomp_run_log* log,
                                                                int generation, double* out);
DEVCOMP_API devcomp_status devcomp_run_log_write_csv(const devcomp_run_log* log,
                                                     const char* path);

/* ---- experiment batches ----------------------------------------------- */

/* A new plan starts from the desk profile. */
DEVCOMP_API devcomp_status devcomp_plan_create(devcomp_plan** out);
DEVCOMP_API void devcomp_plan_destroy(devcomp_plan* plan);

/* key: profile, treatment, envs, runs, generations, pop_size, timesteps, seed,
 * out, workers, eval_threads. Lists are comma separated. */
DEVCOMP_API devcomp_status devcomp_plan_set(devcomp_plan* plan, const char* key,
                                            const char* value);
DEVCOMP_API devcomp_status devcomp_plan_load_file(devcomp_plan* plan, const char* path);

/* Copies the resolved plan as JSON into buf (NUL-terminated, truncated to
 * size). *needed, when non-NULL, receives the full length plus one. */
DEVCOMP_API devcomp_status devcomp_plan_describe(const devcomp_plan* plan, char* buf,
                                                 size_t size, size_t* needed);

typedef void (*devcomp_progress_fn)(const char* message, void* user_data);

/* Runs every cell and writes summaries. Returns DEVCOMP_ERR_PARTIAL when some
 * cells failed; *failed_cells (nullable) receives their count. */
DEVCOMP_API devcomp_status devcomp_plan_run(const devcomp_plan* plan,
                                            devcomp_progress_fn progress, void* user_data,
                                            int* failed_cells);

/* Rebuilds summary.csv and comparisons.csv from the run files under dir. */
DEVCOMP_API devcomp_status devcomp_summarize(const char* dir);

#ifdef __cplusplus
}
#endif

#endif /* DEVCOMP_DEVCOMP_H_ */
