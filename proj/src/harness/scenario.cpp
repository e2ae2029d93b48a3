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

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "sdisac/beampattern.hpp"
#include "sdisac/channel.hpp"
#include "sdisac/harness.hpp"
#include "sdisac/precoding.hpp"
#include "sdisac/rng.hpp"
#include "sdisac/sidelobe.hpp"

namespace sdisac {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Objective objective_of(const ScenarioConfig& c) {
  switch (c.mode) {
    case Mode::Beampattern:
    case Mode::ImperfectCsi: return Objective::Beampattern;
    case Mode::Isl: return Objective::Isl;
    case Mode::Tradeoff:
    case Mode::RadarOnly: return c.objective;
  }
  return Objective::Beampattern;
}

ReferenceBeampattern scenario_reference(const ScenarioConfig& c, const AngleGrid& grid) {
  double scale = c.reference_scale;
  if (!(scale > 0.0)) {
    // Expected radiated gain of an isotropic block with ||X||_F^2 = L P_t is L P_t per angle.
    const ReferenceBeampattern unit = reference_pattern(c.targets, c.beam_width, grid, 1.0);
    scale = energy_matched_scale(grid.size() * c.block_len * c.total_power, unit);
  }
  return reference_pattern(c.targets, c.beam_width, grid, scale);
}

void optimize_beampattern(const ScenarioConfig& c, const CMatrix& comm, const NullSpaceBasis& basis,
                          const CMatrix& b0, double budget, TrialRecord& rec, CMatrix& b,
                          const CorrelationMatrix* r, double omega) {
  const AngleGrid grid = AngleGrid::uniform(c.grid_size);
  const ReferenceBeampattern ref = scenario_reference(c, grid);
  BeampatternProblem problem(comm, basis, grid, ref, budget, c.mm_tolerance, c.mm_max_iterations);
  const MmResult res = r ? mm_beampattern_optimize_imperfect(problem, *r, c.mu, omega, b0)
                         : mm_beampattern_optimize(problem, b0);
  b = res.b;
  const CMatrix x = compose_waveform(comm, basis, b).entries;
  const RVector gains = beampattern(x, grid);
  rec.beampattern_cost = res.beampattern_cost;
  rec.reference_scale = ref.scale;
  rec.pslr = peak_sidelobe_ratio(gains, ref);
  rec.mm_iterations = res.iterations;
  rec.converged = res.status == SolveStatus::Converged;
  if (c.mode == Mode::Beampattern || c.mode == Mode::RadarOnly)
    rec.gains.assign(gains.data(), gains.data() + gains.size());
}

void optimize_isl(const ScenarioConfig& c, const CMatrix& comm, const NullSpaceBasis& basis,
                  const CMatrix& b0, double budget, TrialRecord& rec, CMatrix& b) {
  ArmijoOptions armijo;
  armijo.growth = c.armijo_growth;
  IslProblem problem(comm, basis, c.max_lag, budget, c.rcg_tolerance, c.rcg_max_iterations, armijo);
  const RcgResult res = rcg_optimize(problem, b0);
  b = res.b;
  const CMatrix x = compose_waveform(comm, basis, b).entries;
  const RVector lags = per_lag_sidelobes(x, c.max_lag);
  rec.isl = res.isl_trace.back();
  rec.per_lag.assign(lags.data(), lags.data() + lags.size());
  rec.mainlobe_energy = correlation_matrix(x, 0).squaredNorm();
  rec.rcg_iterations = res.iterations;
  rec.converged = res.status == SolveStatus::Converged;
}

void radar_only_trial(const ScenarioConfig& c, int trial, Stream init, TrialRecord& rec) {
  const int nt = c.num_tx, l = c.block_len;
  const double budget = l * c.total_power;
  const CMatrix comm = CMatrix::Zero(nt, l);
  const NullSpaceBasis basis = NullSpaceBasis::identity(nt);
  Engine engine = make_engine(derive_seed(c.master_seed, static_cast<std::uint64_t>(trial), init));
  const CMatrix b0 = random_sphere_point(nt, l, budget, engine);
  CMatrix b;
  if (objective_of(c) == Objective::Beampattern)
    optimize_beampattern(c, comm, basis, b0, budget, rec, b, nullptr, 1.0);
  else
    optimize_isl(c, comm, basis, b0, budget, rec, b);
}

void sdisac_trial(const ScenarioConfig& c, const SweepPoint& point, int trial, TrialRecord& rec) {
  const int nt = c.num_tx, k = c.num_users, l = c.block_len;
  const auto seed = [&](Stream s) {
    return derive_seed(c.master_seed, static_cast<std::uint64_t>(trial), s);
  };
  const bool imperfect = c.mode == Mode::ImperfectCsi;

  std::optional<ChannelMatrix> design, truth;
  std::optional<CorrelationMatrix> corr;
  if (imperfect) {
    Engine est_engine = make_engine(seed(Stream::CsiEstimate));
    const CMatrix estimate = complex_gaussian(k, nt, est_engine);
    corr = exponential_correlation(nt, c.rho);
    const CsiModel model = make_csi_model(estimate, c.mu, *corr);
    CsiRealization real = gauss_markov_realization(model, seed(Stream::CsiError));
    design = std::move(real.estimate);
    truth = std::move(real.truth);
  } else {
    design = rayleigh_channel(k, nt, seed(Stream::Channel));
    truth = design;
  }

  const QosConfig qos = QosConfig::uniform(k, c.sinr_target, c.noise_var, l);
  Precoder pre = min_power_precoder(*design, qos);
  std::optional<double> beta_target = c.beta;
  if (c.mode == Mode::Tradeoff) beta_target = point.value;
  if (beta_target) pre = rescale_precoder(pre, *design, qos, *beta_target * c.total_power);

  const PowerSplit split = power_split(c.total_power, pre.comm_power);
  const NullSpaceBasis basis = compute_null_space_basis(*design);
  const SymbolBlock sym = generate_symbols(k, l, seed(Stream::Symbols));
  const CMatrix comm = pre.beams * sym.symbols;
  rec.comm_power = split.comm();
  rec.beta = split.ratio();

  const double budget = l * split.added();
  Engine init = make_engine(seed(Stream::Init));
  const CMatrix b0 = random_sphere_point(basis.dim(), l, budget, init);
  CMatrix b;
  if (objective_of(c) == Objective::Beampattern)
    optimize_beampattern(c, comm, basis, b0, budget, rec, b, imperfect ? &*corr : nullptr,
                         imperfect ? point.value : 1.0);
  else
    optimize_isl(c, comm, basis, b0, budget, rec, b);

  const TransmitWaveform w = compose_waveform(comm, basis, b);
  rec.sinr = achieved_sinr(*truth, pre.beams, qos, w.added_part);
  rec.sum_rate = sum_rate(rec.sinr);

  if (!imperfect || c.mu == 0.0) {
    const auto full = realized_sinr(*truth, pre.beams, sym.symbols, w.entries, qos);
    const auto base = realized_sinr(*truth, pre.beams, sym.symbols, w.comm_part, qos);
    double err = 0.0;
    for (std::size_t i = 0; i < full.size(); ++i)
      err = std::max(err, std::abs(full[i] - base[i]) / base[i]);
    rec.zero_interference_error = err;
  }
  if (imperfect) {
    rec.effective_interference = effective_interference_energy(w.entries, *corr, c.mu);
    rec.realized_interference = ((truth->entries() - design->entries()) * w.entries).squaredNorm() / k;
  }
}

struct MetricDef {
  const char* name;
  bool db;
  std::function<std::optional<double>(const TrialRecord&)> get;
};

const std::vector<MetricDef>& metric_defs() {
  static const std::vector<MetricDef> defs = {
      {"comm_power", true, [](const TrialRecord& r) { return r.comm_power; }},
      {"beta", false, [](const TrialRecord& r) { return r.beta; }},
      {"sum_rate", false, [](const TrialRecord& r) { return r.sum_rate; }},
      {"beampattern_cost", true, [](const TrialRecord& r) { return r.beampattern_cost; }},
      {"pslr", true, [](const TrialRecord& r) { return r.pslr; }},
      {"reference_scale", false, [](const TrialRecord& r) { return r.reference_scale; }},
      {"isl", true, [](const TrialRecord& r) { return r.isl; }},
      {"mainlobe_energy", true, [](const TrialRecord& r) { return r.mainlobe_energy; }},
      {"mm_iterations", false,
       [](const TrialRecord& r) -> std::optional<double> {
         if (!r.mm_iterations) return std::nullopt;
         return *r.mm_iterations;
       }},
      {"rcg_iterations", false,
       [](const TrialRecord& r) -> std::optional<double> {
         if (!r.rcg_iterations) return std::nullopt;
         return *r.rcg_iterations;
       }},
      {"converged", false,
       [](const TrialRecord& r) -> std::optional<double> {
         if (!r.converged) return std::nullopt;
         return *r.converged ? 1.0 : 0.0;
       }},
      {"effective_interference", true, [](const TrialRecord& r) { return r.effective_interference; }},
      {"realized_interference", true, [](const TrialRecord& r) { return r.realized_interference; }},
      {"zero_interference_error", false, [](const TrialRecord& r) { return r.zero_interference_error; }},
  };
  return defs;
}

std::vector<Aggregate> aggregate(const std::vector<SweepPoint>& points,
                                 const std::vector<TrialRecord>& records, int trials) {
  std::vector<Aggregate> out;
  for (int p = 0; p < static_cast<int>(points.size()); ++p) {
    int excluded = 0;
    for (int t = 0; t < trials; ++t)
      if (!records[static_cast<std::size_t>(p * trials + t)].ok()) ++excluded;
    for (const MetricDef& m : metric_defs()) {
      std::vector<double> vals;
      for (int t = 0; t < trials; ++t) {
        const TrialRecord& r = records[static_cast<std::size_t>(p * trials + t)];
        if (!r.ok()) continue;
        if (auto v = m.get(r)) vals.push_back(*v);
      }
      if (vals.empty()) continue;
      double sum = 0.0;
      for (double v : vals) sum += v;
      const double mean = sum / static_cast<double>(vals.size());
      double ss = 0.0;
      for (double v : vals) ss += (v - mean) * (v - mean);
      const double n = static_cast<double>(vals.size());
      const double se = vals.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
      out.push_back(Aggregate{p, m.name, static_cast<int>(vals.size()), excluded, mean, se, m.db});
    }
  }
  return out;
}

}  // namespace

std::vector<SweepPoint> sweep_points(const ScenarioConfig& c) {
  std::vector<SweepPoint> pts;
  switch (c.mode) {
    case Mode::Tradeoff:
      for (double b : c.beta_sweep) pts.push_back({"beta=" + format_number(b), b, false});
      if (c.radar_companion) pts.push_back({"radar-only", kNaN, true});
      break;
    case Mode::ImperfectCsi:
      for (double w : c.omega_sweep) pts.push_back({"omega=" + format_number(w), w, false});
      break;
    case Mode::RadarOnly:
      pts.push_back({"radar-only", kNaN, true});
      break;
    default:
      pts.push_back({to_string(c.mode), kNaN, false});
      break;
  }
  return pts;
}

TrialRecord run_trial(const ScenarioConfig& config, const SweepPoint& point, int point_index,
                      int trial) {
  TrialRecord rec;
  rec.trial = trial;
  rec.point = point_index;
  rec.seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(trial), Stream::Channel);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (point.radar_only)
      radar_only_trial(config, trial, config.mode == Mode::RadarOnly ? Stream::Init : Stream::RadarInit, rec);
    else
      sdisac_trial(config, point, trial, rec);
  } catch (const Error& e) {
    rec.status = to_string(e.code());
    rec.message = e.what();
  } catch (const std::exception& e) {
    rec.status = "InternalError";
    rec.message = e.what();
  }
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

ScenarioResult run_scenario(const ScenarioConfig& config, int workers) {
  config.validate();
  if (workers < 1) throw Error(ErrorCode::ConfigError, "worker count must be >= 1");

  ScenarioResult res;
  res.config = config;
  res.points = sweep_points(config);
  const int trials = config.effective_trials();
  const std::size_t jobs = res.points.size() * static_cast<std::size_t>(trials);
  res.records.resize(jobs);

  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t j = next.fetch_add(1); j < jobs; j = next.fetch_add(1)) {
      const int p = static_cast<int>(j / static_cast<std::size_t>(trials));
      const int t = static_cast<int>(j % static_cast<std::size_t>(trials));
      res.records[j] = run_trial(config, res.points[static_cast<std::size_t>(p)], p, t);
    }
  };
  const int n = std::min<int>(workers, static_cast<int>(std::max<std::size_t>(jobs, 1)));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  res.summary = aggregate(res.points, res.records, trials);
  const AngleGrid grid = AngleGrid::uniform(config.grid_size);
  const ReferenceBeampattern ref = scenario_reference(config, grid);
  res.grid_degrees = grid.degrees();
  res.reference_mask.assign(ref.values.data(), ref.values.data() + ref.values.size());
  return res;
}

const TrialRecord& ScenarioResult::record(int point, int trial) const {
  return records.at(static_cast<std::size_t>(point * config.effective_trials() + trial));
}

std::optional<double> ScenarioResult::mean(int point, const std::string& metric) const {
  for (const Aggregate& a : summary)
    if (a.point == point && a.metric == metric) return a.mean;
  return std::nullopt;
}

int ScenarioResult::failures() const {
  int n = 0;
  for (const TrialRecord& r : records)
    if (!r.ok()) ++n;
  return n;
}

}  // namespace sdisac
