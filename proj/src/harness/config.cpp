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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "sdisac/error.hpp"
#include "sdisac/harness.hpp"

namespace sdisac {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* want) {
  throw Error(ErrorCode::ConfigError, "invalid value '" + value + "' for '" + key + "' (expected " + want + ")");
}

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) bad_value(key, value, "a number");
  return out;
}

long long parse_int(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  long long out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) bad_value(key, value, "an integer");
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    bad_value(key, value, "an unsigned 64-bit integer");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = lower(trim(value));
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  bad_value(key, value, "a boolean");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(parse_double(key, item));
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += format_number(v[i]);
  }
  return s;
}

}  // namespace

const char* to_string(Mode m) noexcept {
  switch (m) {
    case Mode::Beampattern: return "beampattern";
    case Mode::Isl: return "isl";
    case Mode::Tradeoff: return "tradeoff";
    case Mode::ImperfectCsi: return "imperfect-csi";
    case Mode::RadarOnly: return "radar-only";
  }
  return "unknown";
}

const char* to_string(Objective o) noexcept {
  return o == Objective::Isl ? "isl" : "beampattern";
}

Mode parse_mode(const std::string& s) {
  const std::string v = lower(trim(s));
  if (v == "beampattern") return Mode::Beampattern;
  if (v == "isl") return Mode::Isl;
  if (v == "tradeoff") return Mode::Tradeoff;
  if (v == "imperfect-csi" || v == "imperfect_csi") return Mode::ImperfectCsi;
  if (v == "radar-only" || v == "radar_only") return Mode::RadarOnly;
  throw Error(ErrorCode::ConfigError, "unknown mode '" + s + "'");
}

ScenarioConfig ScenarioConfig::defaults(Mode mode) {
  ScenarioConfig c;
  c.mode = mode;
  if (mode == Mode::ImperfectCsi) c.beta = 0.5;
  return c;
}

void ScenarioConfig::set(const std::string& raw_key, const std::string& value) {
  const std::string key = lower(trim(raw_key));
  const std::string v = trim(value);
  if (key == "mode") {
    mode = parse_mode(v);
    if (mode == Mode::ImperfectCsi && !beta) beta = 0.5;
  } else if (key == "objective") {
    const std::string o = lower(v);
    if (o == "beampattern") objective = Objective::Beampattern;
    else if (o == "isl") objective = Objective::Isl;
    else bad_value(key, value, "beampattern or isl");
  } else if (key == "num_tx" || key == "nt") {
    num_tx = static_cast<int>(parse_int(key, v));
  } else if (key == "num_users" || key == "k") {
    num_users = static_cast<int>(parse_int(key, v));
  } else if (key == "block_len" || key == "l") {
    block_len = static_cast<int>(parse_int(key, v));
  } else if (key == "total_power" || key == "pt") {
    total_power = parse_double(key, v);
  } else if (key == "noise_var") {
    noise_var = parse_double(key, v);
  } else if (key == "gamma_db") {
    sinr_target = from_db(parse_double(key, v));
  } else if (key == "gamma") {
    sinr_target = parse_double(key, v);
  } else if (key == "targets") {
    targets = parse_list(key, v);
  } else if (key == "beam_width") {
    beam_width = parse_double(key, v);
  } else if (key == "grid_size" || key == "u") {
    grid_size = static_cast<int>(parse_int(key, v));
  } else if (key == "max_lag" || key == "p") {
    max_lag = static_cast<int>(parse_int(key, v));
  } else if (key == "reference_scale") {
    reference_scale = parse_double(key, v);
  } else if (key == "rho") {
    rho = cdouble(parse_double(key, v), rho.imag());
  } else if (key == "rho_imag") {
    rho = cdouble(rho.real(), parse_double(key, v));
  } else if (key == "mu") {
    mu = parse_double(key, v);
  } else if (key == "omega") {
    omega = parse_double(key, v);
    omega_sweep = {omega};
  } else if (key == "beta") {
    const std::string b = lower(v);
    if (b.empty() || b == "qos") {
      beta.reset();
    } else {
      beta = parse_double(key, v);
      beta_sweep = {*beta};
    }
  } else if (key == "betas") {
    beta_sweep = parse_list(key, v);
  } else if (key == "omegas") {
    omega_sweep = parse_list(key, v);
  } else if (key == "radar_companion") {
    radar_companion = parse_bool(key, v);
  } else if (key == "trials") {
    trials = static_cast<int>(parse_int(key, v));
  } else if (key == "seed" || key == "master_seed") {
    master_seed = parse_u64(key, v);
  } else if (key == "mm_tolerance" || key == "eps1") {
    mm_tolerance = parse_double(key, v);
  } else if (key == "mm_max_iterations") {
    mm_max_iterations = static_cast<int>(parse_int(key, v));
  } else if (key == "rcg_tolerance" || key == "eps2") {
    rcg_tolerance = parse_double(key, v);
  } else if (key == "rcg_max_iterations") {
    rcg_max_iterations = static_cast<int>(parse_int(key, v));
  } else if (key == "armijo_growth") {
    armijo_growth = parse_double(key, v);
  } else {
    throw Error(ErrorCode::ConfigError, "unknown configuration key '" + raw_key + "'");
  }
}

void ScenarioConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config file " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ConfigError,
                  path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    try {
      set(line.substr(0, eq), line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigError, path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); };
  if (num_tx < 1) fail("num_tx must be positive");
  if (num_users < 1 || num_users >= num_tx) fail("num_users must satisfy 1 <= K < Nt");
  if (block_len < 1) fail("block_len must be positive");
  if (!(total_power > 0.0)) fail("total_power must be positive");
  if (!(noise_var > 0.0)) fail("noise_var must be positive");
  if (!(sinr_target > 0.0)) fail("SINR target must be positive");
  if (targets.empty()) fail("at least one target angle is required");
  for (double t : targets)
    if (t < -90.0 || t > 90.0) fail("target angles must lie in [-90, 90]");
  if (!(beam_width > 0.0)) fail("beam_width must be positive");
  if (grid_size < 2) fail("grid_size must be at least 2");
  if (max_lag < 2 || max_lag - 1 > block_len) fail("max_lag must satisfy 1 <= P-1 <= L");
  if (!(reference_scale >= 0.0)) fail("reference_scale must be >= 0");
  if (!(std::abs(rho) <= 1.0)) fail("|rho| must be <= 1");
  if (!(mu >= 0.0 && mu <= 1.0)) fail("mu must lie in [0, 1]");
  if (!(omega >= 0.0 && omega <= 1.0)) fail("omega must lie in [0, 1]");
  if (beta && !(*beta >= 0.0 && *beta <= 1.0)) fail("beta must lie in [0, 1]");
  for (double b : beta_sweep)
    if (!(b >= 0.0 && b <= 1.0)) fail("beta sweep values must lie in [0, 1]");
  for (double w : omega_sweep)
    if (!(w >= 0.0 && w <= 1.0)) fail("omega sweep values must lie in [0, 1]");
  if (mode == Mode::Tradeoff && beta_sweep.empty()) fail("tradeoff mode needs a beta sweep");
  if (mode == Mode::ImperfectCsi && omega_sweep.empty()) fail("imperfect-csi mode needs an omega sweep");
  if (trials < 0) fail("trials must be >= 0");
  if (!(mm_tolerance > 0.0) || mm_max_iterations < 1) fail("invalid MM stopping rule");
  if (!(rcg_tolerance > 0.0) || rcg_max_iterations < 1) fail("invalid RCG stopping rule");
  if (!(armijo_growth >= 0.0)) fail("armijo_growth must be >= 0");
}

int ScenarioConfig::effective_trials() const {
  if (trials > 0) return trials;
  const bool isl_run = mode == Mode::Isl ||
                       ((mode == Mode::RadarOnly || mode == Mode::Tradeoff) && objective == Objective::Isl);
  return isl_run ? 200 : 1000;
}

std::string ScenarioConfig::to_text() const {
  std::ostringstream o;
  o << "mode = " << to_string(mode) << "\n";
  o << "objective = " << to_string(objective) << "\n";
  o << "num_tx = " << num_tx << "\n";
  o << "num_users = " << num_users << "\n";
  o << "block_len = " << block_len << "\n";
  o << "total_power = " << format_number(total_power) << "\n";
  o << "noise_var = " << format_number(noise_var) << "\n";
  o << "gamma = " << format_number(sinr_target) << "\n";
  o << "targets = " << join(targets) << "\n";
  o << "beam_width = " << format_number(beam_width) << "\n";
  o << "grid_size = " << grid_size << "\n";
  o << "max_lag = " << max_lag << "\n";
  o << "reference_scale = " << format_number(reference_scale) << "\n";
  o << "rho = " << format_number(rho.real()) << "\n";
  o << "rho_imag = " << format_number(rho.imag()) << "\n";
  o << "mu = " << format_number(mu) << "\n";
  o << "omegas = " << join(omega_sweep) << "\n";
  o << "beta = " << (beta ? format_number(*beta) : std::string("qos")) << "\n";
  o << "betas = " << join(beta_sweep) << "\n";
  o << "radar_companion = " << (radar_companion ? "true" : "false") << "\n";
  o << "trials = " << effective_trials() << "\n";
  o << "seed = " << master_seed << "\n";
  o << "mm_tolerance = " << format_number(mm_tolerance) << "\n";
  o << "mm_max_iterations = " << mm_max_iterations << "\n";
  o << "rcg_tolerance = " << format_number(rcg_tolerance) << "\n";
  o << "rcg_max_iterations = " << rcg_max_iterations << "\n";
  o << "armijo_growth = " << format_number(armijo_growth) << "\n";
  return o.str();
}

}  // namespace sdisac
