// SPDX-License-Identifier: Apache-2.0
//
// sdisac: spatial-division ISAC waveform synthesis
// Copyright (C) 2026 The sdisac authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "sdisac/sdisac.h"

#include <cstring>
#include <new>
#include <string>

#include "sdisac/core_model.hpp"
#include "sdisac/harness.hpp"
#include "sdisac/precoding.hpp"

struct sdisac_scenario {
  sdisac::ScenarioConfig config;
};

struct sdisac_result {
  sdisac::ScenarioResult result;
};

namespace {

thread_local std::string g_last_error;

sdisac_status map_code(sdisac::ErrorCode c) {
  using sdisac::ErrorCode;
  switch (c) {
    case ErrorCode::InvalidArgument: return SDISAC_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return SDISAC_ERR_DIMENSION_MISMATCH;
    case ErrorCode::NullSpaceEmpty: return SDISAC_ERR_NULL_SPACE_EMPTY;
    case ErrorCode::RankDeficient: return SDISAC_ERR_RANK_DEFICIENT;
    case ErrorCode::DelayOutOfRange: return SDISAC_ERR_DELAY_OUT_OF_RANGE;
    case ErrorCode::PowerBudgetExceeded: return SDISAC_ERR_POWER_BUDGET_EXCEEDED;
    case ErrorCode::InvalidRho: return SDISAC_ERR_INVALID_RHO;
    case ErrorCode::SolverNotConverged: return SDISAC_ERR_SOLVER_NOT_CONVERGED;
    case ErrorCode::BracketingFailed: return SDISAC_ERR_BRACKETING_FAILED;
    case ErrorCode::ZeroPoint: return SDISAC_ERR_ZERO_POINT;
    case ErrorCode::NoSidelobeRegion: return SDISAC_ERR_NO_SIDELOBE_REGION;
    case ErrorCode::NoMainlobeRegion: return SDISAC_ERR_NO_MAINLOBE_REGION;
    case ErrorCode::ConfigError: return SDISAC_ERR_CONFIG;
    case ErrorCode::IoError: return SDISAC_ERR_IO;
  }
  return SDISAC_ERR_INTERNAL;
}

sdisac_status fail(sdisac_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
sdisac_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return SDISAC_OK;
  } catch (const sdisac::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SDISAC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SDISAC_ERR_INTERNAL, e.what());
  }
}

sdisac::CMatrix read_complex(const double* data, int rows, int cols) {
  sdisac::CMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const std::size_t at = 2 * (static_cast<std::size_t>(j) * rows + i);
      m(i, j) = sdisac::cdouble(data[at], data[at + 1]);
    }
  return m;
}

void write_complex(const sdisac::CMatrix& m, double* out) {
  for (sdisac::Index j = 0; j < m.cols(); ++j)
    for (sdisac::Index i = 0; i < m.rows(); ++i) {
      const std::size_t at = 2 * (static_cast<std::size_t>(j) * m.rows() + i);
      out[at] = m(i, j).real();
      out[at + 1] = m(i, j).imag();
    }
}

sdisac_status copy_string(const std::string& s, char* buffer, size_t capacity) {
  if (!buffer || capacity < s.size() + 1)
    return fail(SDISAC_ERR_BUFFER_TOO_SMALL, "buffer needs " + std::to_string(s.size() + 1) + " bytes");
  std::memcpy(buffer, s.c_str(), s.size() + 1);
  return SDISAC_OK;
}

}  // namespace

extern "C" {

const char* sdisac_version(void) { return "1.0.0"; }

const char* sdisac_status_name(sdisac_status status) {
  switch (status) {
    case SDISAC_OK: return "OK";
    case SDISAC_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case SDISAC_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case SDISAC_ERR_NULL_SPACE_EMPTY: return "NullSpaceEmpty";
    case SDISAC_ERR_RANK_DEFICIENT: return "RankDeficient";
    case SDISAC_ERR_DELAY_OUT_OF_RANGE: return "DelayOutOfRange";
    case SDISAC_ERR_POWER_BUDGET_EXCEEDED: return "PowerBudgetExceeded";
    case SDISAC_ERR_INVALID_RHO: return "InvalidRho";
    case SDISAC_ERR_SOLVER_NOT_CONVERGED: return "SolverNotConverged";
    case SDISAC_ERR_BRACKETING_FAILED: return "BracketingFailed";
    case SDISAC_ERR_ZERO_POINT: return "ZeroPoint";
    case SDISAC_ERR_NO_SIDELOBE_REGION: return "NoSidelobeRegion";
    case SDISAC_ERR_NO_MAINLOBE_REGION: return "NoMainlobeRegion";
    case SDISAC_ERR_CONFIG: return "ConfigError";
    case SDISAC_ERR_IO: return "IoError";
    case SDISAC_ERR_NULL_POINTER: return "NullPointer";
    case SDISAC_ERR_NOT_FOUND: return "NotFound";
    case SDISAC_ERR_BUFFER_TOO_SMALL: return "BufferTooSmall";
    case SDISAC_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* sdisac_last_error(void) { return g_last_error.c_str(); }

sdisac_status sdisac_scenario_create(const char* mode, sdisac_scenario** out) {
  if (!mode || !out) return fail(SDISAC_ERR_NULL_POINTER, "null argument");
  *out = nullptr;
  return guard([&] {
    auto s = new sdisac_scenario{sdisac::ScenarioConfig::defaults(sdisac::parse_mode(mode))};
    *out = s;
  });
}

void sdisac_scenario_destroy(sdisac_scenario* scenario) { delete scenario; }

sdisac_status sdisac_scenario_load(sdisac_scenario* scenario, const char* path) {
  if (!scenario || !path) return fail(SDISAC_ERR_NULL_POINTER, "null argument");
  return guard([&] { scenario->config.load_file(path); });
}

sdisac_status sdisac_scenario_set(sdisac_scenario* scenario, const char* key, const char* value) {
  if (!scenario || !key || !value) return fail(SDISAC_ERR_NULL_POINTER, "null argument");
  return guard([&] { scenario->config.set(key, value); });
}

sdisac_status sdisac_scenario_describe(const sdisac_scenario* scenario, char* buffer,
                                       size_t capacity, size_t* needed) {
  if (!scenario) return fail(SDISAC_ERR_NULL_POINTER, "null argument");
  const std::string text = scenario->config.to_text();
  if (needed) *needed = text.size() + 1;
  if (!buffer && capacity == 0) return SDISAC_OK;
  return copy_string(text, buffer, capacity);
}

sdisac_status sdisac_run(const sdisac_scenario* scenario, int workers, sdisac_result** out) {
  if (!scenario || !out) return fail(SDISAC_ERR_NULL_POINTER, "null argument");
  *out = nullptr;
  return guard([&] {
    auto r = new sdisac_result{sdisac::run_scenario(scenario->config, workers)};
    *out = r;
  });
}

void sdisac_result_destroy(sdisac_result* result) { delete result; }

sdisac_status sdisac_result_write(const sdisac_result* result, const char* directory) {
  if (!result || !directory) return fail(SDISAC_ERR_NULL_POINTER, "null argument");
  return guard([&] { sdisac::write_outputs(result->result, directory); });
}

size_t sdisac_result_point_count(const sdisac_result* result) {
  return result ? result->result.points.size() : 0;
}

size_t sdisac_result_trial_count(const sdisac_result* result) {
  return result ? static_cast<size_t>(result->result.config.effective_trials()) : 0;
}

size_t sdisac_result_failure_count(const sdisac_result* result) {
  return result ? static_cast<size_t>(result->result.failures()) : 0;
}

sdisac_status sdisac_result_point_label(const sdisac_result* result, size_t point, char* buffer,
                                        size_t capacity) {
  if (!result) return fail(SDISAC_ERR_NULL_POINTER, "null argument");
  if (point >= result->result.points.size()) return fail(SDISAC_ERR_NOT_FOUND, "point out of range");
  return copy_string(result->result.points[point].label, buffer, capacity);
}

sdisac_status sdisac_result_mean(const sdisac_result* result, size_t point, const char* metric,
                                 double* mean, double* std_error, size_t* count) {
  if (!result || !metric) return fail(SDISAC_ERR_NULL_POINTER, "null argument");
  for (const sdisac::Aggregate& a : result->result.summary) {
    if (a.point != static_cast<int>(point) || a.metric != metric) continue;
    if (mean) *mean = a.mean;
    if (std_error) *std_error = a.std_error;
    if (count) *count = static_cast<size_t>(a.count);
    return SDISAC_OK;
  }
  return fail(SDISAC_ERR_NOT_FOUND, std::string("no aggregate '") + metric + "' at point " + std::to_string(point));
}

sdisac_status sdisac_null_space(const double* channel, int num_users, int num_tx, double* basis_out) {
  if (!channel || !basis_out) return fail(SDISAC_ERR_NULL_POINTER, "null argument");
  return guard([&] {
    const sdisac::ChannelMatrix h(read_complex(channel, num_users, num_tx));
    write_complex(sdisac::compute_null_space_basis(h).columns(), basis_out);
  });
}

sdisac_status sdisac_min_power_precoder(const double* channel, int num_users, int num_tx,
                                        double sinr_target, double noise_var, int block_len,
                                        double* beams_out, double* comm_power) {
  if (!channel || !beams_out) return fail(SDISAC_ERR_NULL_POINTER, "null argument");
  return guard([&] {
    const sdisac::ChannelMatrix h(read_complex(channel, num_users, num_tx));
    const auto qos = sdisac::QosConfig::uniform(num_users, sinr_target, noise_var, block_len);
    const sdisac::Precoder p = sdisac::min_power_precoder(h, qos);
    write_complex(p.beams, beams_out);
    if (comm_power) *comm_power = p.comm_power;
  });
}

}  // extern "C"
