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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sdisac/types.hpp"

namespace sdisac {

enum class Mode { Beampattern, Isl, Tradeoff, ImperfectCsi, RadarOnly };
enum class Objective { Beampattern, Isl };

const char* to_string(Mode m) noexcept;
const char* to_string(Objective o) noexcept;
Mode parse_mode(const std::string& s);

struct ScenarioConfig {
  Mode mode = Mode::Beampattern;
  Objective objective = Objective::Beampattern;  // used by tradeoff and radar-only

  int num_tx = 20;
  int num_users = 4;
  int block_len = 64;
  double total_power = 1.0;
  double noise_var = 0.01;
  double sinr_target = 10.0;  // linear (10 dB)

  std::vector<double> targets{-40.0, 0.0, 40.0};
  double beam_width = 10.0;
  int grid_size = 360;
  int max_lag = 16;
  double reference_scale = 0.0;  // 0 selects energy matching

  cdouble rho{0.6, 0.0};
  double mu = 0.3;      // imperfect-csi only
  double omega = 0.5;   // imperfect-csi only, when no sweep is given

  std::optional<double> beta;  // fixed power split; QoS-driven when empty
  std::vector<double> beta_sweep{0.1, 0.3, 0.5, 0.7, 0.9};
  std::vector<double> omega_sweep{0.1, 0.3, 0.5, 0.7, 0.9};
  bool radar_companion = true;  // tradeoff: radar-only run per realization

  int trials = 0;  // 0 selects the per-mode default
  std::uint64_t master_seed = 1;

  double mm_tolerance = 1e-4;
  int mm_max_iterations = 500;
  double rcg_tolerance = 1e-4;
  int rcg_max_iterations = 1000;
  double armijo_growth = 0.0;

  static ScenarioConfig defaults(Mode mode);

  // Applies one key=value setting; throws ConfigError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  void load_file(const std::filesystem::path& path);
  void validate() const;
  int effective_trials() const;
  std::string to_text() const;
};

struct SweepPoint {
  std::string label;
  double value;  // beta or omega; NaN when the point is not swept
  bool radar_only;
};

struct TrialRecord {
  int trial = 0;
  int point = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";
  std::string message;

  std::optional<double> comm_power;
  std::optional<double> beta;
  std::optional<double> sum_rate;
  std::vector<double> sinr;

  std::optional<double> beampattern_cost;
  std::optional<double> pslr;
  std::optional<double> reference_scale;
  std::optional<double> isl;
  std::optional<double> mainlobe_energy;
  std::vector<double> per_lag;
  std::vector<double> gains;  // beampattern over the grid

  std::optional<int> mm_iterations;
  std::optional<int> rcg_iterations;
  std::optional<bool> converged;

  std::optional<double> effective_interference;
  std::optional<double> realized_interference;
  std::optional<double> zero_interference_error;
  double wall_time = 0.0;

  bool ok() const { return status == "ok"; }
};

struct Aggregate {
  int point;
  std::string metric;
  int count;
  int excluded;
  double mean;
  double std_error;
  bool db;  // mean is a power-like quantity with a dB column
};

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<SweepPoint> points;
  std::vector<TrialRecord> records;  // point-major, then trial index
  std::vector<Aggregate> summary;
  std::vector<double> grid_degrees;
  std::vector<double> reference_mask;

  const TrialRecord& record(int point, int trial) const;
  std::optional<double> mean(int point, const std::string& metric) const;
  int failures() const;
};

std::vector<SweepPoint> sweep_points(const ScenarioConfig& config);

TrialRecord run_trial(const ScenarioConfig& config, const SweepPoint& point, int point_index,
                      int trial);

ScenarioResult run_scenario(const ScenarioConfig& config, int workers = 1);

// Writes trials.csv, summary.csv and the mode's curve files; returns the paths written.
std::vector<std::filesystem::path> write_outputs(const ScenarioResult& result,
                                                 const std::filesystem::path& dir);

void emit_csv(const ScenarioResult& result, const std::filesystem::path& path);
void emit_summary(const ScenarioResult& result, const std::filesystem::path& path);
std::vector<std::filesystem::path> emit_curves(const ScenarioResult& result,
                                               const std::filesystem::path& dir);

// Shortest round-trip decimal form.
std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace sdisac
