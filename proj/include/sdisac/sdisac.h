/* SPDX-License-Identifier: Apache-2.0
 *
 * sdisac: spatial-division ISAC waveform synthesis
 * Copyright (C) 2026 The sdisac authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------ */

#ifndef SDISAC_SDISAC_H
#define SDISAC_SDISAC_H

#include <stddef.h>

#if defined(SDISAC_BUILDING_LIBRARY)
#define SDISAC_API __attribute__((visibility("default")))
#else
#define SDISAC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sdisac_scenario sdisac_scenario;
typedef struct sdisac_result sdisac_result;

typedef enum sdisac_status {
  SDISAC_OK = 0,
  SDISAC_ERR_INVALID_ARGUMENT = 1,
  SDISAC_ERR_DIMENSION_MISMATCH = 2,
  SDISAC_ERR_NULL_SPACE_EMPTY = 3,
  SDISAC_ERR_RANK_DEFICIENT = 4,
  SDISAC_ERR_DELAY_OUT_OF_RANGE = 5,
  SDISAC_ERR_POWER_BUDGET_EXCEEDED = 6,
  SDISAC_ERR_INVALID_RHO = 7,
  SDISAC_ERR_SOLVER_NOT_CONVERGED = 8,
  SDISAC_ERR_BRACKETING_FAILED = 9,
  SDISAC_ERR_ZERO_POINT = 10,
  SDISAC_ERR_NO_SIDELOBE_REGION = 11,
  SDISAC_ERR_NO_MAINLOBE_REGION = 12,
  SDISAC_ERR_CONFIG = 13,
  SDISAC_ERR_IO = 14,
  SDISAC_ERR_NULL_POINTER = 100,
  SDISAC_ERR_NOT_FOUND = 101,
  SDISAC_ERR_BUFFER_TOO_SMALL = 102,
  SDISAC_ERR_INTERNAL = 103
} sdisac_status;

SDISAC_API const char* sdisac_version(void);
SDISAC_API const char* sdisac_status_name(sdisac_status status);

/* Message for the most recent failure on the calling thread. */
SDISAC_API const char* sdisac_last_error(void);

/* Scenario configuration. mode is one of beampattern, isl, tradeoff,
 * imperfect-csi, radar-only. */
SDISAC_API sdisac_status sdisac_scenario_create(const char* mode, sdisac_scenario** out);
SDISAC_API void sdisac_scenario_destroy(sdisac_scenario* scenario);
SDISAC_API sdisac_status sdisac_scenario_load(sdisac_scenario* scenario, const char* path);
SDISAC_API sdisac_status sdisac_scenario_set(sdisac_scenario* scenario, const char* key,
                                             const char* value);
/* Writes the resolved key = value text; *needed receives the size including the terminator. */
SDISAC_API sdisac_status sdisac_scenario_describe(const sdisac_scenario* scenario, char* buffer,
                                                  size_t capacity, size_t* needed);

/* Monte-Carlo run. Results do not depend on the worker count. */
SDISAC_API sdisac_status sdisac_run(const sdisac_scenario* scenario, int workers,
                                    sdisac_result** out);
SDISAC_API void sdisac_result_destroy(sdisac_result* result);
SDISAC_API sdisac_status sdisac_result_write(const sdisac_result* result, const char* directory);
SDISAC_API size_t sdisac_result_point_count(const sdisac_result* result);
SDISAC_API size_t sdisac_result_trial_count(const sdisac_result* result);
SDISAC_API size_t sdisac_result_failure_count(const sdisac_result* result);
SDISAC_API sdisac_status sdisac_result_point_label(const sdisac_result* result, size_t point,
                                                   char* buffer, size_t capacity);
SDISAC_API sdisac_status sdisac_result_mean(const sdisac_result* result, size_t point,
                                            const char* metric, double* mean, double* std_error,
                                            size_t* count);

/* Numeric primitives. Complex matrices are column-major with interleaved
 * (re, im) doubles. */
SDISAC_API sdisac_status sdisac_null_space(const double* channel, int num_users, int num_tx,
                                           double* basis_out);
SDISAC_API sdisac_status sdisac_min_power_precoder(const double* channel, int num_users, int num_tx,
                                                   double sinr_target, double noise_var,
                                                   int block_len, double* beams_out,
                                                   double* comm_power);

#ifdef __cplusplus
}
#endif

#endif /* SDISAC_SDISAC_H */
