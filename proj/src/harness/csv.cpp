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

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sdisac/error.hpp"
#include "sdisac/harness.hpp"

namespace sdisac {

namespace {

namespace fs = std::filesystem;

class CsvWriter {
 public:
  explicit CsvWriter(const fs::path& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  }
  ~CsvWriter() = default;

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  void close() {
    out_.flush();
    if (!out_) throw Error(ErrorCode::IoError, "write failed for " + path_.string());
    out_.close();
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }
std::string cell(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }
std::string cell(const std::optional<bool>& v) {
  return v ? std::string(*v ? "1" : "0") : std::string();
}
std::string db_cell(const std::optional<double>& v) {
  return v ? format_number(to_db(*v)) : std::string();
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

bool point_value_is_set(const SweepPoint& p) { return !std::isnan(p.value); }

// Mean over successful trials of a per-trial vector field.
std::vector<double> mean_vector(const ScenarioResult& r, int point,
                                const std::vector<double> TrialRecord::*field) {
  const int trials = r.config.effective_trials();
  std::vector<double> acc;
  int n = 0;
  for (int t = 0; t < trials; ++t) {
    const TrialRecord& rec = r.record(point, t);
    const std::vector<double>& v = rec.*field;
    if (!rec.ok() || v.empty()) continue;
    if (acc.empty()) acc.assign(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) acc[i] += v[i];
    ++n;
  }
  for (double& a : acc) a /= n;
  return acc;
}

const Aggregate* find(const ScenarioResult& r, int point, const std::string& metric) {
  for (const Aggregate& a : r.summary)
    if (a.point == point && a.metric == metric) return &a;
  return nullptr;
}

std::optional<double> mean_of(const ScenarioResult& r, int point, const std::string& metric) {
  const Aggregate* a = find(r, point, metric);
  return a ? std::optional<double>(a->mean) : std::nullopt;
}

std::optional<double> se_of(const ScenarioResult& r, int point, const std::string& metric) {
  const Aggregate* a = find(r, point, metric);
  return a ? std::optional<double>(a->std_error) : std::nullopt;
}

int radar_point(const ScenarioResult& r) {
  for (std::size_t i = 0; i < r.points.size(); ++i)
    if (r.points[i].radar_only) return static_cast<int>(i);
  return -1;
}

int excluded_at(const ScenarioResult& r, int point) {
  int n = 0;
  const int trials = r.config.effective_trials();
  for (int t = 0; t < trials; ++t)
    if (!r.record(point, t).ok()) ++n;
  return n;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw Error(ErrorCode::IoError, "number formatting failed");
  return std::string(buf.data(), ptr);
}

void emit_csv(const ScenarioResult& r, const fs::path& path) {
  if (r.records.empty()) throw Error(ErrorCode::InvalidArgument, "no records to write");
  int k = 0, lags = 0;
  for (const TrialRecord& rec : r.records) {
    k = std::max<int>(k, static_cast<int>(rec.sinr.size()));
    lags = std::max<int>(lags, static_cast<int>(rec.per_lag.size()));
  }
  std::vector<std::string> header = {"trial", "point", "label", "sweep_value", "seed", "status",
                                     "comm_power", "beta", "sum_rate"};
  for (int i = 1; i <= k; ++i) header.push_back("sinr_" + std::to_string(i));
  for (const char* h : {"beampattern_cost", "pslr", "reference_scale", "isl", "mainlobe_energy"})
    header.push_back(h);
  for (int i = 1; i <= lags; ++i) header.push_back("lag_" + std::to_string(i));
  for (const char* h : {"mm_iterations", "rcg_iterations", "converged", "effective_interference",
                        "realized_interference", "zero_interference_error", "wall_time_s", "message"})
    header.push_back(h);

  CsvWriter w(path);
  w.row(header);
  for (const TrialRecord& rec : r.records) {
    const SweepPoint& p = r.points[static_cast<std::size_t>(rec.point)];
    std::vector<std::string> row = {std::to_string(rec.trial), std::to_string(rec.point), p.label,
                                    point_value_is_set(p) ? format_number(p.value) : "",
                                    std::to_string(rec.seed), rec.status, cell(rec.comm_power),
                                    cell(rec.beta), cell(rec.sum_rate)};
    for (int i = 0; i < k; ++i)
      row.push_back(i < static_cast<int>(rec.sinr.size()) ? format_number(rec.sinr[static_cast<std::size_t>(i)]) : "");
    row.push_back(cell(rec.beampattern_cost));
    row.push_back(cell(rec.pslr));
    row.push_back(cell(rec.reference_scale));
    row.push_back(cell(rec.isl));
    row.push_back(cell(rec.mainlobe_energy));
    for (int i = 0; i < lags; ++i)
      row.push_back(i < static_cast<int>(rec.per_lag.size()) ? format_number(rec.per_lag[static_cast<std::size_t>(i)]) : "");
    row.push_back(cell(rec.mm_iterations));
    row.push_back(cell(rec.rcg_iterations));
    row.push_back(cell(rec.converged));
    row.push_back(cell(rec.effective_interference));
    row.push_back(cell(rec.realized_interference));
    row.push_back(cell(rec.zero_interference_error));
    row.push_back(format_number(rec.wall_time));
    row.push_back(sanitize(rec.message));
    w.row(row);
  }
  w.close();
}

void emit_summary(const ScenarioResult& r, const fs::path& path) {
  CsvWriter w(path);
  w.row({"point", "label", "sweep_value", "metric", "count", "excluded", "mean", "std_error", "mean_db"});
  for (const Aggregate& a : r.summary) {
    const SweepPoint& p = r.points[static_cast<std::size_t>(a.point)];
    w.row({std::to_string(a.point), p.label, point_value_is_set(p) ? format_number(p.value) : "",
           a.metric, std::to_string(a.count), std::to_string(a.excluded), format_number(a.mean),
           format_number(a.std_error), a.db ? format_number(to_db(a.mean)) : ""});
  }
  w.close();
}

std::vector<fs::path> emit_curves(const ScenarioResult& r, const fs::path& dir) {
  std::vector<fs::path> written;
  const ScenarioConfig& c = r.config;
  const bool isl_objective =
      c.mode == Mode::Isl || ((c.mode == Mode::Tradeoff || c.mode == Mode::RadarOnly) && c.objective == Objective::Isl);

  if ((c.mode == Mode::Beampattern || c.mode == Mode::RadarOnly) && !isl_objective) {
    const fs::path p = dir / "beampattern_vs_angle.csv";
    const std::vector<double> g = mean_vector(r, 0, &TrialRecord::gains);
    CsvWriter w(p);
    w.row({"angle_deg", "reference", "gain", "gain_db"});
    for (std::size_t u = 0; u < r.grid_degrees.size(); ++u) {
      const double v = g.empty() ? std::nan("") : g[u];
      w.row({format_number(r.grid_degrees[u]), format_number(r.reference_mask[u]), format_number(v),
             format_number(to_db(v))});
    }
    w.close();
    written.push_back(p);
  }

  if (c.mode == Mode::Isl || (c.mode == Mode::RadarOnly && isl_objective)) {
    const fs::path p = dir / "sidelobe_vs_lag.csv";
    const std::vector<double> lv = mean_vector(r, 0, &TrialRecord::per_lag);
    CsvWriter w(p);
    w.row({"lag", "level", "level_db"});
    for (int tau = 1; tau < c.max_lag; ++tau) {
      const double v = lv.empty() ? std::nan("") : lv[static_cast<std::size_t>(tau - 1)];
      w.row({std::to_string(tau), format_number(v), format_number(to_db(v))});
    }
    w.close();
    written.push_back(p);
  }

  if (c.mode == Mode::Tradeoff) {
    const int rp = radar_point(r);
    const std::string metric = isl_objective ? "isl" : "beampattern_cost";
    const std::string name = isl_objective ? "isl" : "cost";
    const fs::path p = dir / (name + "_vs_beta.csv");
    CsvWriter w(p);
    w.row({"beta", name, name + "_db", name + "_std_error", "count", "excluded", "radar_only_" + name,
           "radar_only_" + name + "_db"});
    const std::optional<double> radar = rp >= 0 ? mean_of(r, rp, metric) : std::nullopt;
    for (std::size_t i = 0; i < r.points.size(); ++i) {
      if (r.points[i].radar_only) continue;
      const int pi = static_cast<int>(i);
      const Aggregate* a = find(r, pi, metric);
      w.row({format_number(r.points[i].value), cell(mean_of(r, pi, metric)), db_cell(mean_of(r, pi, metric)),
             cell(se_of(r, pi, metric)), a ? std::to_string(a->count) : "0",
             std::to_string(excluded_at(r, pi)), cell(radar), db_cell(radar)});
    }
    w.close();
    written.push_back(p);

    if (!isl_objective) {
      const fs::path q = dir / "rate_vs_pslr.csv";
      CsvWriter v(q);
      v.row({"beta", "sum_rate", "sum_rate_std_error", "pslr", "pslr_db"});
      for (std::size_t i = 0; i < r.points.size(); ++i) {
        if (r.points[i].radar_only) continue;
        const int pi = static_cast<int>(i);
        v.row({format_number(r.points[i].value), cell(mean_of(r, pi, "sum_rate")),
               cell(se_of(r, pi, "sum_rate")), cell(mean_of(r, pi, "pslr")),
               db_cell(mean_of(r, pi, "pslr"))});
      }
      v.close();
      written.push_back(q);
    }
  }

  if (c.mode == Mode::ImperfectCsi) {
    const fs::path p = dir / "rate_pslr_vs_omega.csv";
    CsvWriter w(p);
    w.row({"omega", "sum_rate", "sum_rate_std_error", "pslr", "pslr_db", "effective_interference",
           "effective_interference_db", "count", "excluded"});
    for (std::size_t i = 0; i < r.points.size(); ++i) {
      const int pi = static_cast<int>(i);
      const Aggregate* a = find(r, pi, "sum_rate");
      w.row({format_number(r.points[i].value), cell(mean_of(r, pi, "sum_rate")),
             cell(se_of(r, pi, "sum_rate")), cell(mean_of(r, pi, "pslr")), db_cell(mean_of(r, pi, "pslr")),
             cell(mean_of(r, pi, "effective_interference")),
             db_cell(mean_of(r, pi, "effective_interference")), a ? std::to_string(a->count) : "0",
             std::to_string(excluded_at(r, pi))});
    }
    w.close();
    written.push_back(p);
  }
  return written;
}

std::vector<fs::path> write_outputs(const ScenarioResult& r, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create output directory " + dir.string() + ": " + ec.message());
  std::vector<fs::path> written;
  {
    const fs::path p = dir / "config.txt";
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + p.string() + " for writing");
    out << r.config.to_text();
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + p.string());
    written.push_back(p);
  }
  emit_csv(r, dir / "trials.csv");
  written.push_back(dir / "trials.csv");
  emit_summary(r, dir / "summary.csv");
  written.push_back(dir / "summary.csv");
  for (const fs::path& p : emit_curves(r, dir)) written.push_back(p);
  return written;
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

}  // namespace sdisac
