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

#include "sdisac/beampattern.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace sdisac {

namespace {

constexpr double kDegenerateNorm = 1e-12;
constexpr int kMaxBracketDoublings = 2000;
constexpr double kBisectionRelTol = 1e-10;

double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

void check_b(const CMatrix& b, const BeampatternProblem& problem) {
  if (b.rows() != problem.basis().dim() || b.cols() != problem.comm().cols())
    throw Error(ErrorCode::DimensionMismatch, "B must be (Nt-K) x L");
}

double cost_from_v(const CMatrix& v, const RVector& sqrt_d) {
  const RVector n = v.colwise().norm().transpose();
  return (n - sqrt_d).squaredNorm();
}

Majorizer majorizer_from_v(const CMatrix& v, const BeampatternProblem& problem) {
  const RVector& sqrt_d = problem.sqrt_ref();
  const Index u = v.cols();
  RVector w = RVector::Zero(u);
  int degenerate = 0;
  for (Index i = 0; i < u; ++i) {
    if (sqrt_d(i) == 0.0) continue;
    const double n = v.col(i).norm();
    if (n < kDegenerateNorm) {
      ++degenerate;
      continue;
    }
    w(i) = 2.0 * sqrt_d(i) / n;
  }
  return Majorizer{problem.a() * w.cast<cdouble>().asDiagonal() * v.adjoint(), degenerate};
}

struct Penalty {
  double coef;       // (1 - omega) mu^2
  CMatrix root_comm; // R^{1/2} X_c
  CMatrix root_basis;// R^{1/2} Delta
  CMatrix lin;       // Delta^H R X_c
};

MmResult run_mm(const BeampatternProblem& problem, const QuadraticSystem& system, double omega,
                const Penalty* pen, const CMatrix& b0) {
  check_b(b0, problem);
  const double budget = problem.budget();
  const double b0_err = std::abs(b0.squaredNorm() - budget) / budget;
  if (b0_err > 1e-8)
    throw Error(ErrorCode::InvalidArgument, "B_0 is not on the power sphere");

  auto objective = [&](const CMatrix& b, double g) {
    if (!pen) return g;
    return omega * g + pen->coef * (pen->root_comm + pen->root_basis * b).squaredNorm();
  };

  MmResult out;
  out.b = b0;
  CMatrix v = b0.adjoint() * problem.a() + problem.z();
  double g = cost_from_v(v, problem.sqrt_ref());
  double f = objective(b0, g);
  out.cost_trace.push_back(f);
  out.max_sphere_violation = b0_err;

  CMatrix best = b0;
  double best_f = f, best_g = g;
  out.status = SolveStatus::IterationCapReached;
  for (int t = 0; t < problem.max_iterations(); ++t) {
    const Majorizer maj = majorizer_from_v(v, problem);
    out.degenerate_terms += maj.degenerate_terms;
    const CMatrix base = 0.5 * maj.d - problem.azh();
    const TrustRegionStep step =
        pen ? solve_trust_region(omega * base - pen->coef * pen->lin, system, budget)
            : solve_trust_region(base, system, budget);
    out.b = step.b;
    out.max_sphere_violation =
        std::max(out.max_sphere_violation, std::abs(out.b.squaredNorm() - budget) / budget);
    v = out.b.adjoint() * problem.a() + problem.z();
    g = cost_from_v(v, problem.sqrt_ref());
    const double f_next = objective(out.b, g);
    out.cost_trace.push_back(f_next);
    out.iterations = t + 1;
    if (f_next < best_f) {
      best_f = f_next;
      best_g = g;
      best = out.b;
    }
    const bool done = std::abs(f_next - f) <= problem.tolerance();
    f = f_next;
    if (done) {
      out.status = SolveStatus::Converged;
      break;
    }
  }
  if (out.status == SolveStatus::Converged) {
    out.beampattern_cost = g;
  } else {
    out.b = best;
    out.beampattern_cost = best_g;
  }
  return out;
}

}  // namespace

const char* to_string(SolveStatus s) noexcept {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::IterationCapReached: return "IterationCapReached";
    case SolveStatus::LineSearchFailed: return "LineSearchFailed";
  }
  return "Unknown";
}

AngleGrid AngleGrid::uniform(int size) {
  if (size < 2) throw Error(ErrorCode::InvalidArgument, "angle grid needs at least 2 points");
  AngleGrid g;
  g.resolution_ = 180.0 / size;
  g.degrees_.resize(static_cast<std::size_t>(size));
  for (int u = 0; u < size; ++u) g.degrees_[static_cast<std::size_t>(u)] = -90.0 + u * g.resolution_;
  return g;
}

int ReferenceBeampattern::mainlobe_count() const {
  return static_cast<int>(std::count(mainlobe.begin(), mainlobe.end(), true));
}

QuadraticSystem QuadraticSystem::from_hermitian(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(m);
  if (eig.info() != Eigen::Success)
    throw Error(ErrorCode::SolverNotConverged, "Hermitian eigendecomposition failed");
  return QuadraticSystem{eig.eigenvectors(), eig.eigenvalues()};
}

CVector steering_vector(double theta_deg, int num_antennas) {
  if (num_antennas < 1) throw Error(ErrorCode::InvalidArgument, "antenna count must be positive");
  const double phase = std::numbers::pi * std::sin(deg2rad(theta_deg));
  CVector a(num_antennas);
  for (int n = 0; n < num_antennas; ++n) a(n) = std::polar(1.0, phase * n);
  return a;
}

CMatrix steering_matrix(const AngleGrid& grid, int num_antennas) {
  CMatrix s(num_antennas, grid.size());
  for (int u = 0; u < grid.size(); ++u)
    s.col(u) = steering_vector(grid.degrees()[static_cast<std::size_t>(u)], num_antennas);
  return s;
}

double beampattern(const CMatrix& x, double theta_deg) {
  return (x.adjoint() * steering_vector(theta_deg, static_cast<int>(x.rows()))).squaredNorm();
}

RVector beampattern(const CMatrix& x, const AngleGrid& grid) {
  const CMatrix s = steering_matrix(grid, static_cast<int>(x.rows()));
  return (x.adjoint() * s).colwise().squaredNorm().transpose();
}

ReferenceBeampattern reference_pattern(const std::vector<double>& targets, double beam_width,
                                       const AngleGrid& grid, double scale) {
  if (!(beam_width >= 0.0)) throw Error(ErrorCode::InvalidArgument, "beam width must be >= 0");
  if (!(scale >= 0.0)) throw Error(ErrorCode::InvalidArgument, "reference scale must be >= 0");
  const double lo = grid.degrees().front(), hi = grid.degrees().back();
  for (double t : targets)
    if (t < lo - grid.resolution() || t > hi + grid.resolution())
      throw Error(ErrorCode::InvalidArgument, "target " + std::to_string(t) + " outside grid");

  ReferenceBeampattern r{targets, beam_width, scale, RVector::Zero(grid.size()),
                         std::vector<bool>(static_cast<std::size_t>(grid.size()), false)};
  const double half = beam_width / 2.0 + 1e-9;
  for (int u = 0; u < grid.size(); ++u) {
    const double th = grid.degrees()[static_cast<std::size_t>(u)];
    for (double t : targets)
      if (std::abs(th - t) <= half) {
        r.mainlobe[static_cast<std::size_t>(u)] = true;
        r.values(u) = scale;
      }
  }
  return r;
}

double energy_matched_scale(double total_gain, const ReferenceBeampattern& unit_reference) {
  const int n = unit_reference.mainlobe_count();
  if (n == 0) throw Error(ErrorCode::NoMainlobeRegion, "reference has no mainlobe points");
  return total_gain / n;
}

BeampatternProblem::BeampatternProblem(CMatrix comm, NullSpaceBasis basis, const AngleGrid& grid,
                                       ReferenceBeampattern reference, double budget,
                                       double tolerance, int max_iterations)
    : comm_(std::move(comm)),
      basis_(std::move(basis)),
      grid_(grid),
      reference_(std::move(reference)),
      budget_(budget),
      tolerance_(tolerance),
      max_iterations_(max_iterations) {
  if (comm_.rows() != basis_.num_tx())
    throw Error(ErrorCode::DimensionMismatch, "X_c rows must equal Nt");
  if (reference_.values.size() != grid_.size())
    throw Error(ErrorCode::DimensionMismatch, "reference and grid sizes differ");
  if (!(budget_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "power budget must be positive");
  if (max_iterations_ < 1) throw Error(ErrorCode::InvalidArgument, "iteration cap must be >= 1");
  const CMatrix s = steering_matrix(grid_, basis_.num_tx());
  a_ = basis_.columns().adjoint() * s;
  z_ = comm_.adjoint() * s;
  sqrt_d_ = reference_.values.cwiseSqrt();
  aah_ = a_ * a_.adjoint();
  azh_ = a_ * z_.adjoint();
  system_ = QuadraticSystem::from_hermitian(aah_);
}

double beampattern_cost(const CMatrix& b, const BeampatternProblem& problem) {
  check_b(b, problem);
  return cost_from_v(b.adjoint() * problem.a() + problem.z(), problem.sqrt_ref());
}

double beampattern_cost_expanded(const CMatrix& b, const BeampatternProblem& problem) {
  check_b(b, problem);
  const double quad = real_inner(b, problem.aah() * b);
  const double cross = 2.0 * real_inner(b, problem.azh());
  const double zz = problem.z().squaredNorm();
  const RVector n = (b.adjoint() * problem.a() + problem.z()).colwise().norm().transpose();
  const double mix = 2.0 * problem.sqrt_ref().dot(n);
  const double dd = problem.reference().values.sum();
  return quad + cross + zz - mix + dd;
}

Majorizer majorizer_matrix(const CMatrix& bt, const BeampatternProblem& problem) {
  check_b(bt, problem);
  return majorizer_from_v(bt.adjoint() * problem.a() + problem.z(), problem);
}

double surrogate_value(const CMatrix& b, const CMatrix& bt, const Majorizer& maj,
                       const BeampatternProblem& problem) {
  auto quad = [&](const CMatrix& m) { return (m.adjoint() * problem.a() + problem.z()).squaredNorm(); };
  const double constant = beampattern_cost(bt, problem) - quad(bt) + real_inner(bt, maj.d);
  return quad(b) - real_inner(b, maj.d) + constant;
}

double secular_power(const CMatrix& qhg, const RVector& values, double lambda) {
  const RVector w = qhg.rowwise().squaredNorm();
  return (w.array() / (values.array() + lambda).square()).sum();
}

TrustRegionStep solve_trust_region(const CMatrix& g, const QuadraticSystem& system, double budget) {
  const Index n = system.values.size();
  if (g.rows() != n) throw Error(ErrorCode::DimensionMismatch, "G rows must match the system size");
  if (!(budget > 0.0)) throw Error(ErrorCode::InvalidArgument, "budget must be positive");
  if (!g.allFinite()) throw Error(ErrorCode::BracketingFailed, "G has non-finite entries");

  const CMatrix w = system.vectors.adjoint() * g;
  const RVector weights = w.rowwise().squaredNorm();
  const RVector& ev = system.values;
  const double lmin = ev.minCoeff();

  // Offset s = lambda + lambda_min > 0; P is strictly decreasing in s.
  auto power = [&](double s) {
    double p = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double den = ev(i) - lmin + s;
      p += weights(i) / (den * den);
    }
    return p;
  };

  const double s_lo0 = 1e-12 * (1.0 + std::abs(lmin));
  TrustRegionStep out;
  out.hard_case = false;
  if (power(s_lo0) <= budget) {
    // Hard case: weight on the lowest eigenspace vanishes. Take lambda = -lambda_min
    // and fill the remaining budget along a lowest eigenvector.
    const double tol = 1e-12 * (1.0 + std::abs(lmin));
    CMatrix y = CMatrix::Zero(n, g.cols());
    Index imin = 0;
    for (Index i = 0; i < n; ++i) {
      const double gap = ev(i) - lmin;
      if (gap > tol)
        y.row(i) = w.row(i) / gap;
      else
        imin = i;
    }
    const double rest = std::max(0.0, budget - y.squaredNorm());
    y(imin, 0) += std::sqrt(rest);
    out.b = system.vectors * y;
    out.lambda = -lmin;
    out.hard_case = true;
    return out;
  }

  double lo = s_lo0;
  double hi = s_lo0 + 1.0;
  int doublings = 0;
  while (power(hi) >= budget) {
    hi *= 2.0;
    if (++doublings > kMaxBracketDoublings || !std::isfinite(hi))
      throw Error(ErrorCode::BracketingFailed, "no finite lambda attains the power budget");
  }
  while (hi - lo > kBisectionRelTol * hi) {
    const double mid = 0.5 * (lo + hi);
    const double p = power(mid);
    if (p > budget)
      lo = mid;
    else if (p < budget)
      hi = mid;
    else
      lo = hi = mid;
  }
  const double s = 0.5 * (lo + hi);
  const RVector inv = (ev.array() - lmin + s).inverse();
  out.b = system.vectors * (inv.cast<cdouble>().asDiagonal() * w);
  out.lambda = s - lmin;
  return out;
}

TrustRegionStep solve_trust_region(const CMatrix& g, const CMatrix& a, double budget) {
  return solve_trust_region(g, QuadraticSystem::from_hermitian(a * a.adjoint()), budget);
}

MmResult mm_beampattern_optimize(const BeampatternProblem& problem, const CMatrix& b0) {
  return run_mm(problem, problem.system(), 1.0, nullptr, b0);
}

MmResult mm_beampattern_optimize(const BeampatternProblem& problem, Engine& engine) {
  return mm_beampattern_optimize(
      problem, random_sphere_point(problem.basis().dim(), problem.comm().cols(), problem.budget(), engine));
}

MmResult mm_beampattern_optimize_imperfect(const BeampatternProblem& problem,
                                           const CorrelationMatrix& r, double mu, double omega,
                                           const CMatrix& b0) {
  if (!(omega >= 0.0 && omega <= 1.0)) throw Error(ErrorCode::InvalidArgument, "omega must lie in [0, 1]");
  if (!(mu >= 0.0 && mu <= 1.0)) throw Error(ErrorCode::InvalidArgument, "mu must lie in [0, 1]");
  const CMatrix& delta = problem.basis().columns();
  if (r.entries.rows() != delta.rows())
    throw Error(ErrorCode::DimensionMismatch, "correlation size must equal Nt");

  Penalty pen;
  pen.coef = (1.0 - omega) * mu * mu;
  pen.root_comm = r.sqrt * problem.comm();
  pen.root_basis = r.sqrt * delta;
  pen.lin = delta.adjoint() * r.entries * problem.comm();
  const CMatrix m = omega * problem.aah() + pen.coef * (delta.adjoint() * r.entries * delta);
  const QuadraticSystem system = QuadraticSystem::from_hermitian(m);
  return run_mm(problem, system, omega, &pen, b0);
}

double peak_sidelobe_ratio(const RVector& gains, const ReferenceBeampattern& reference) {
  if (gains.size() != reference.values.size())
    throw Error(ErrorCode::DimensionMismatch, "gain vector and reference sizes differ");
  double side = -1.0, main = -1.0;
  for (Index u = 0; u < gains.size(); ++u) {
    if (reference.values(u) > 0.0)
      main = std::max(main, gains(u));
    else
      side = std::max(side, gains(u));
  }
  if (main < 0.0) throw Error(ErrorCode::NoMainlobeRegion, "reference has no mainlobe points");
  if (side < 0.0) throw Error(ErrorCode::NoSidelobeRegion, "reference has no sidelobe points");
  return side / main;
}

double peak_sidelobe_ratio(const CMatrix& x, const AngleGrid& grid,
                           const ReferenceBeampattern& reference) {
  return peak_sidelobe_ratio(beampattern(x, grid), reference);
}

}  // namespace sdisac
