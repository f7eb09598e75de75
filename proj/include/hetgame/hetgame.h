// Copyright 2026 The hetgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the hetgame solvers. All objects are opaque handles created
 * and destroyed through this API. Every fallible call returns an hg_status;
 * on failure hg_last_error() describes the problem for the calling thread.
 *
 * Players are indexed 0 (leader / macro cell) to F (followers). Carrier
 * indices are 0-based. Power and gain matrices are row-major (F+1) x K.
 */

#ifndef HETGAME_HETGAME_H_
#define HETGAME_HETGAME_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HETGAME_BUILDING_LIBRARY)
#    define HETGAME_API __declspec(dllexport)
#  else
#    define HETGAME_API __declspec(dllimport)
#  endif
#else
#  define HETGAME_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hg_status {
  HG_OK = 0,
  HG_ERR_NULL_ARGUMENT = 1,
  HG_ERR_INVALID_ARGUMENT = 2,
  HG_ERR_DOMAIN = 3,
  HG_ERR_NO_ROOT = 4,
  HG_ERR_IO = 5,
  HG_ERR_OUT_OF_RANGE = 6,
  HG_ERR_INTERNAL = 7
} hg_status;

typedef enum hg_regime { HG_REGIME_SPARSE = 0, HG_REGIME_DENSE = 1 } hg_regime;

typedef enum hg_scheme {
  HG_SCHEME_STACKELBERG = 0,
  HG_SCHEME_NASH = 1,
  HG_SCHEME_BEST_CHANNEL = 2
} hg_scheme;

typedef struct hg_instance hg_instance;
typedef struct hg_result hg_result;
typedef struct hg_config hg_config;

typedef struct hg_verify_summary {
  int trials_checked;
  int mismatches;
  int oracle_checked;
  int oracle_failures;
} hg_verify_summary;

HETGAME_API const char* hg_version(void);
/* Message of the last failed call on this thread; "" if none. */
HETGAME_API const char* hg_last_error(void);
HETGAME_API const char* hg_status_string(hg_status status);

/* Efficiency fixed points for f(x) = (1 - e^{-x})^m. */
HETGAME_API hg_status hg_gamma_star(int m, double tol, double* out);
HETGAME_API hg_status hg_gamma_double_star(int m, double a, double tol,
                                           double* out, int* admissible);

/* rates may be NULL (all ones); otherwise followers + 1 entries. */
HETGAME_API hg_status hg_instance_create(int carriers, int followers,
                                         const double* gain,
                                         const double* cross, double noise,
                                         const double* rates,
                                         hg_instance** out);
HETGAME_API hg_status hg_instance_sample(int carriers, int followers,
                                         double mean_signal, double mean_cross,
                                         double snr_db, uint64_t seed,
                                         hg_instance** out);
HETGAME_API void hg_instance_destroy(hg_instance* instance);
HETGAME_API int hg_instance_carriers(const hg_instance* instance);
HETGAME_API int hg_instance_followers(const hg_instance* instance);
HETGAME_API hg_status hg_instance_gain(const hg_instance* instance, int player,
                                       int carrier, double* out);
HETGAME_API uint64_t hg_instance_digest(const hg_instance* instance);

/* Stackelberg uses the sparse closed form or the dense algorithm per regime.
 * Iterative schemes use max_iter = 1000 and tol = 1e-10. */
HETGAME_API hg_status hg_solve(const hg_instance* instance, int m,
                               hg_scheme scheme, hg_regime regime,
                               hg_result** out);
HETGAME_API void hg_result_destroy(hg_result* result);
HETGAME_API hg_status hg_result_power(const hg_result* result, int player,
                                      int carrier, double* out);
/* Copies the (F+1) x K allocation; len must be at least (F+1) * K. */
HETGAME_API hg_status hg_result_allocation(const hg_result* result,
                                           double* buffer, size_t len);
HETGAME_API hg_status hg_result_utility(const hg_result* result, int player,
                                        double* out);
/* -1 for a silent player. */
HETGAME_API hg_status hg_result_active_carrier(const hg_result* result,
                                               int player, int* out);
HETGAME_API int hg_result_converged(const hg_result* result);
HETGAME_API int hg_result_iterations(const hg_result* result);

/* Oracle certification of a result produced by hg_solve for the same
 * instance. passed is 1 when every player's check passes; worst_gain is the
 * largest relative improvement found. Best-channel results are not
 * equilibria and report passed = 1, worst_gain = 0. */
HETGAME_API hg_status hg_verify(const hg_instance* instance, int m,
                                const hg_result* result, int grid_size,
                                double tolerance, int* passed,
                                double* worst_gain);

/* Scenario configuration with key=value setters (keys as in the CLI). */
HETGAME_API hg_status hg_config_create(hg_config** out);
HETGAME_API void hg_config_destroy(hg_config* config);
HETGAME_API hg_status hg_config_set(hg_config* config, const char* key,
                                    const char* value);
HETGAME_API hg_status hg_config_load_file(hg_config* config, const char* path);
HETGAME_API hg_status hg_config_validate(const hg_config* config);

/* Writes the sweep CSV (and summary when configured). records may be NULL. */
HETGAME_API hg_status hg_sweep_run(const hg_config* config, size_t* records);
typedef void (*hg_message_fn)(const char* message, void* user_data);

/* Re-solves every trial of a sweep CSV and re-certifies the configured
 * subsample. on_message (may be NULL) receives one line per problem. */
HETGAME_API hg_status hg_verify_csv(const hg_config* config,
                                    const char* csv_path,
                                    hg_message_fn on_message, void* user_data,
                                    hg_verify_summary* out);

#ifdef __cplusplus
}
#endif

#endif /* HETGAME_HETGAME_H_ */
