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

#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sdisac/sdisac.h"

namespace {

struct CommonOptions {
  std::string config;
  std::optional<unsigned long long> seed;
  std::optional<int> trials;
  std::string out = "out";
  int workers = 1;
  std::optional<std::string> beta;
  std::optional<double> gamma_db;
  std::optional<std::string> omega;
  std::optional<double> mu;
  std::optional<std::string> rho;
  std::optional<std::string> objective;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_objective) {
  cmd->add_option("--config", o.config, "key = value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--trials", o.trials, "Monte-Carlo trials per sweep point")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
  cmd->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--beta", o.beta, "Communication power fraction, comma list, or 'qos'");
  cmd->add_option("--gamma-db", o.gamma_db, "Per-user SINR target in dB");
  cmd->add_option("--omega", o.omega, "Sensing weight, or comma list");
  cmd->add_option("--mu", o.mu, "CSI error level");
  cmd->add_option("--rho", o.rho, "Correlation coefficient (re or re,im)");
  if (with_objective)
    cmd->add_option("--objective", o.objective, "beampattern or isl")
        ->check(CLI::IsMember({"beampattern", "isl"}));
  cmd->add_option("--set", o.sets, "Extra key=value setting (repeatable)");
}

bool check(sdisac_status s, const char* what) {
  if (s == SDISAC_OK) return true;
  std::fprintf(stderr, "error: %s: %s: %s\n", what, sdisac_status_name(s), sdisac_last_error());
  return false;
}

bool apply(sdisac_scenario* sc, const std::string& key, const std::string& value) {
  return check(sdisac_scenario_set(sc, key.c_str(), value.c_str()), ("--" + key).c_str());
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run(const std::string& mode, const CommonOptions& o, bool sweep_beta, bool sweep_omega) {
  sdisac_scenario* sc = nullptr;
  if (!check(sdisac_scenario_create(mode.c_str(), &sc), "create")) return 2;
  int rc = 0;
  sdisac_result* res = nullptr;
  auto ok = [&]() -> bool {
    if (!o.config.empty() && !check(sdisac_scenario_load(sc, o.config.c_str()), "--config"))
      return false;
    if (o.objective && !apply(sc, "objective", *o.objective)) return false;
    if (o.seed && !apply(sc, "seed", std::to_string(*o.seed))) return false;
    if (o.trials && !apply(sc, "trials", std::to_string(*o.trials))) return false;
    if (o.gamma_db && !apply(sc, "gamma_db", fmt(*o.gamma_db))) return false;
    if (o.mu && !apply(sc, "mu", fmt(*o.mu))) return false;
    if (o.rho) {
      const auto comma = o.rho->find(',');
      if (!apply(sc, "rho", o.rho->substr(0, comma))) return false;
      if (comma != std::string::npos && !apply(sc, "rho_imag", o.rho->substr(comma + 1)))
        return false;
    }
    if (o.beta) {
      const bool list = o.beta->find(',') != std::string::npos;
      if (list && !sweep_beta) {
        std::fprintf(stderr, "error: --beta: a list is only accepted by tradeoff\n");
        return false;
      }
      if (!apply(sc, list ? "betas" : "beta", *o.beta)) return false;
    }
    if (o.omega) {
      const bool list = o.omega->find(',') != std::string::npos;
      if (list && !sweep_omega) {
        std::fprintf(stderr, "error: --omega: a list is only accepted by imperfect-csi\n");
        return false;
      }
      if (!apply(sc, list ? "omegas" : "omega", *o.omega)) return false;
    }
    for (const std::string& kv : o.sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
        return false;
      }
      if (!apply(sc, kv.substr(0, eq), kv.substr(eq + 1))) return false;
    }
    if (!check(sdisac_run(sc, o.workers, &res), "run")) return false;
    if (!check(sdisac_result_write(res, o.out.c_str()), "write")) return false;
    return true;
  }();
  if (!ok) {
    rc = 2;
  } else {
    const size_t points = sdisac_result_point_count(res);
    std::printf("%s: %zu point(s) x %zu trial(s), %zu failed, written to %s\n", mode.c_str(),
                points, sdisac_result_trial_count(res), sdisac_result_failure_count(res),
                o.out.c_str());
    const char* metrics[] = {"sum_rate", "beampattern_cost", "isl", "pslr"};
    for (size_t p = 0; p < points; ++p) {
      char label[128];
      if (sdisac_result_point_label(res, p, label, sizeof label) != SDISAC_OK) label[0] = '\0';
      std::printf("  %-16s", label);
      for (const char* m : metrics) {
        double mean = 0.0;
        if (sdisac_result_mean(res, p, m, &mean, nullptr, nullptr) == SDISAC_OK)
          std::printf("  %s=%.6g", m, mean);
      }
      std::printf("\n");
    }
  }
  sdisac_result_destroy(res);
  sdisac_scenario_destroy(sc);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial-division ISAC waveform synthesis"};
  app.set_version_flag("--version", std::string(sdisac_version()));
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    bool objective;
    bool sweep_beta;
    bool sweep_omega;
    CommonOptions opts;
    CLI::App* cmd = nullptr;
  };
  std::vector<Sub> subs;
  subs.push_back({"beampattern", "Beampattern matching in the channel null space", false, false, false, {}});
  subs.push_back({"isl", "Integrated sidelobe minimization in the channel null space", false, false, false, {}});
  subs.push_back({"tradeoff", "Sweep the communication power fraction", true, true, false, {}});
  subs.push_back({"imperfect-csi", "Robust beampattern design under channel estimation error", false, false, true, {}});
  subs.push_back({"radar-only", "Full-power radar design without users", true, false, false, {}});
  for (Sub& s : subs) {
    s.cmd = app.add_subcommand(s.name, s.help);
    add_common(s.cmd, s.opts, s.objective);
  }

  CLI11_PARSE(app, argc, argv);

  for (Sub& s : subs)
    if (s.cmd->parsed()) return run(s.name, s.opts, s.sweep_beta, s.sweep_omega);
  return 2;
}
