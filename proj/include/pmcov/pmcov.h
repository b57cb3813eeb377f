/*
 * Copyright 2026 The pmcov Authors.
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
 * C interface to the pmcov coverage simulator.
 *
 * Every function returns a pmcov_status. On failure the calling thread's
 * pmcov_last_error() holds a message, and for PMCOV_ERR_CONFIG
 * pmcov_last_error_key() holds the dotted config key at fault.
 * Handles are opaque and must be released with the matching *_free call.
 * Strings returned through char** are owned by the caller and released with
 * pmcov_string_free.
 */
#ifndef PMCOV_PMCOV_H
#define PMCOV_PMCOV_H

#include <stddef.h>
#include <stdint.h>

#if defined(PMCOV_BUILDING_LIBRARY)
#define PMCOV_API __attribute__((visibility("default")))
#else
#define PMCOV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pmcov_status {
  PMCOV_OK = 0,
  PMCOV_ERR_CONFIG = 1,   /* invalid or unreadable configuration */
  PMCOV_ERR_RUNTIME = 2,  /* solver breakdown or failed run */
  PMCOV_ERR_IO = 3,       /* output could not be written, or bad input file */
  PMCOV_ERR_ARGUMENT = 4  /* null handle or malformed argument */
} pmcov_status;

typedef struct pmcov_config pmcov_config;
typedef struct pmcov_result pmcov_result;
typedef struct pmcov_summary pmcov_summary;
typedef struct pmcov_field pmcov_field;

PMCOV_API const char* pmcov_version(void);
PMCOV_API const char* pmcov_last_error(void);
PMCOV_API const char* pmcov_last_error_key(void);
PMCOV_API void pmcov_string_free(char* s);

/* Configuration ---------------------------------------------------------- */

PMCOV_API pmcov_status pmcov_config_default(pmcov_config** out);
/* Parses a JSON config file; missing keys take their defaults. */
PMCOV_API pmcov_status pmcov_config_load(const char* path, pmcov_config** out);
PMCOV_API pmcov_status pmcov_config_parse(const char* json_text, pmcov_config** out);
/* Loads path (NULL for defaults), applies every "dotted.key=value"
 * assignment in order, then validates once. */
PMCOV_API pmcov_status pmcov_config_build(const char* path, const char* const* assignments, size_t n_assignments,
                                          pmcov_config** out);
/* "dotted.key=value"; re-validates the whole configuration. */
PMCOV_API pmcov_status pmcov_config_override(pmcov_config* cfg, const char* assignment);
PMCOV_API pmcov_status pmcov_config_set_seed(pmcov_config* cfg, uint64_t seed);
PMCOV_API pmcov_status pmcov_config_to_json(const pmcov_config* cfg, char** out_json);
/* Identifier used for per-run output directories (seed excluded). */
PMCOV_API pmcov_status pmcov_config_hash(const pmcov_config* cfg, char** out_hash);
PMCOV_API void pmcov_config_free(pmcov_config* cfg);

/* Single run ------------------------------------------------------------- */

/* Runs one simulation. When out_dir is non-null the run's CSVs, config and
 * field dumps are written to <out_dir>/<hash>_s<seed>/. */
PMCOV_API pmcov_status pmcov_run(const pmcov_config* cfg, const char* out_dir, pmcov_result** out);
PMCOV_API size_t pmcov_result_length(const pmcov_result* r);
/* Coverage error E at steps 0..n_steps; valid until pmcov_result_free. */
PMCOV_API const double* pmcov_result_error_series(const pmcov_result* r);
PMCOV_API double pmcov_result_final_error(const pmcov_result* r);
PMCOV_API double pmcov_result_elapsed_seconds(const pmcov_result* r);
PMCOV_API size_t pmcov_result_n_agents(const pmcov_result* r);
/* Final positions as x0,y0,x1,y1,...; 2*n_agents values. */
PMCOV_API const double* pmcov_result_final_positions(const pmcov_result* r);
/* Directory the run was written to, or "" when no out_dir was given. */
PMCOV_API const char* pmcov_result_output_dir(const pmcov_result* r);
PMCOV_API void pmcov_result_free(pmcov_result* r);

/* Method comparison ------------------------------------------------------ */

/* Runs the configured comparison (compare.methods x compare.n_runs, and the
 * sweep when one is configured). methods_csv, when non-null, replaces
 * compare.methods; n_runs > 0 replaces compare.n_runs. Writes summary.csv
 * and per-run outputs under out_dir when non-null. workers = 0 uses the
 * available hardware threads. */
PMCOV_API pmcov_status pmcov_compare(const pmcov_config* cfg, const char* methods_csv, size_t n_runs,
                                     size_t workers, const char* out_dir, pmcov_summary** out);
PMCOV_API size_t pmcov_summary_n_methods(const pmcov_summary* s);
PMCOV_API const char* pmcov_summary_method(const pmcov_summary* s, size_t method);
PMCOV_API size_t pmcov_summary_length(const pmcov_summary* s);
PMCOV_API const double* pmcov_summary_mean(const pmcov_summary* s, size_t method);
PMCOV_API const double* pmcov_summary_std(const pmcov_summary* s, size_t method);
PMCOV_API size_t pmcov_summary_n_failed(const pmcov_summary* s, size_t method);
PMCOV_API void pmcov_summary_free(pmcov_summary* s);

/* Snapshots -------------------------------------------------------------- */

/* Dumps mu, c, e, g grids (step_<k>_<name>.grid) and trajectory.csv for each
 * requested step into out_dir. steps == NULL uses snapshot.steps. */
PMCOV_API pmcov_status pmcov_snapshot(const pmcov_config* cfg, const size_t* steps, size_t n_steps,
                                      const char* out_dir);

/* Grid dumps ------------------------------------------------------------- */

/* Loads a grid dump as a normalized target density. */
PMCOV_API pmcov_status pmcov_density_load(const char* path, pmcov_field** out);
PMCOV_API pmcov_status pmcov_field_read(const char* path, pmcov_field** out);
PMCOV_API size_t pmcov_field_nx(const pmcov_field* f);
PMCOV_API size_t pmcov_field_ny(const pmcov_field* f);
PMCOV_API double pmcov_field_lx(const pmcov_field* f);
PMCOV_API double pmcov_field_ly(const pmcov_field* f);
/* Row-major values, x fastest. */
PMCOV_API const double* pmcov_field_values(const pmcov_field* f);
PMCOV_API void pmcov_field_free(pmcov_field* f);

#ifdef __cplusplus
}
#endif

#endif /* PMCOV_PMCOV_H */
