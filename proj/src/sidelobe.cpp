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

#include "sdisac/sidelobe.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sdisac {

namespace {

void check_lag(int max_lag, Index block_len) {
  if (max_lag < 1 || max_lag - 1 > block_len)
    throw Error(ErrorCode::DelayOutOfRange,
                "max lag " + std::to_string(max_lag) + " invalid for block length " +
                    std::to_string(block_len));
}

// Lagged energies from the L x L Gram matrix C = X^H X:
// ||Omega_tau||_F^2 = sum_{a,d < L-tau} C(a+tau, d+tau) conj(C(a, d)).
double one_sided_from_gram(const CMatrix& c, int max_lag) {
  const Index l = c.rows();
  const Index top = std::min<Index>(max_lag - 1, l - 1);
  double s = 0.0;
  for (Index tau = 1; tau <= top; ++tau) {
    const Index n = l - tau;
    s += (c.bottomRightCorner(n, n).array() * c.topLeftCorner(n, n).array().conjugate()).real().sum();
  }
  return s;
}

// W = 2 sum_{tau=1}^{P-1} (J C J^T + J^T C J), so that sum_{tau != 0} of
// Omega_tau X J_tau^T + Omega_tau^H X J_tau equals X W.
CMatrix lag_weight(const CMatrix& c, int max_lag) {
  const Index l = c.rows();
  const Index top = std::min<Index>(max_lag - 1, l - 1);
  CMatrix w = CMatrix::Zero(l, l);
  for (Index tau = 1; tau <= top; ++tau) {
    const Index n = l - tau;
    w.topLeftCorner(n, n) += c.bottomRightCorner(n, n);
    w.bottomRightCorner(n, n) += c.topLeftCorner(n, n);
  }
  return 2.0 * w;
}

struct Evaluation {
  CMatrix b, x, c;
  double value;
};

Evaluation evaluate(const IslProblem& p, CMatrix b) {
  Evaluation e;
  e.x = p.comm() + p.basis().columns() * b;
  e.c.noalias() = e.x.adjoint() * e.x;
  e.value = 2.0 * one_sided_from_gram(e.c, p.max_lag());
  e.b = std::move(b);
  return e;
}

CMatrix gradient_at(const IslProblem& p, const Evaluation& e) {
  return p.basis().columns().adjoint() * (e.x * lag_weight(e.c, p.max_lag()));
}

void check_b(const CMatrix& b, const IslProblem& p) {
  if (b.rows() != p.basis().dim() || b.cols() != p.comm().cols())
    throw Error(ErrorCode::DimensionMismatch, "B must be (Nt-K) x L");
}

}  // namespace

IslProblem::IslProblem(CMatrix comm, NullSpaceBasis basis, int max_lag, double budget,
                       double tolerance, int max_iterations, ArmijoOptions armijo)
    : comm_(std::move(comm)),
      basis_(std::move(basis)),
      max_lag_(max_lag),
      budget_(budget),
      tolerance_(tolerance),
      max_iterations_(max_iterations),
      armijo_(armijo) {
  if (comm_.rows() != basis_.num_tx()) throw Error(ErrorCode::DimensionMismatch, "X_c rows must equal Nt");
  if (max_lag_ < 2 || max_lag_ - 1 > comm_.cols())
    throw Error(ErrorCode::DelayOutOfRange, "need 1 <= P-1 <= L");
  if (!(budget_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "power budget must be positive");
  if (max_iterations_ < 1) throw Error(ErrorCode::InvalidArgument, "iteration cap must be >= 1");
}

CMatrix correlation_matrix(const CMatrix& x, int tau) {
  const Index l = x.cols();
  if (std::abs(tau) >= l)
    throw Error(ErrorCode::DelayOutOfRange, "delay " + std::to_string(tau) + " out of range");
  const Index n = l - std::abs(tau);
  if (tau >= 0) return x.leftCols(n) * x.rightCols(n).adjoint();
  return x.rightCols(n) * x.leftCols(n).adjoint();
}

RVector per_lag_sidelobes(const CMatrix& x, int max_lag) {
  check_lag(max_lag, x.cols());
  RVector out = RVector::Zero(max_lag - 1);
  for (int tau = 1; tau < max_lag && tau < x.cols(); ++tau)
    out(tau - 1) = correlation_matrix(x, tau).squaredNorm();
  return out;
}

double isl(const CMatrix& x, int max_lag) {
  return 2.0 * per_lag_sidelobes(x, max_lag).sum();
}

CMatrix isl_gradient(const CMatrix& b, const IslProblem& problem) {
  check_b(b, problem);
  return gradient_at(problem, evaluate(problem, b));
}

CMatrix tangent_project(const CMatrix& b, const CMatrix& g, double budget) {
  if (b.rows() != g.rows() || b.cols() != g.cols())
    throw Error(ErrorCode::DimensionMismatch, "B and G shapes differ");
  return g - (real_inner(b, g) / budget) * b;
}

SpherePoint retract(const CMatrix& b, double budget) {
  const double n = b.norm();
  if (n < 1e-14) throw Error(ErrorCode::ZeroPoint, "cannot retract a zero matrix");
  return SpherePoint(b * (std::sqrt(budget) / n), budget);
}

RcgResult rcg_optimize(const IslProblem& problem, const CMatrix& b0) {
  check_b(b0, problem);
  const double budget = problem.budget();
  const ArmijoOptions& ar = problem.armijo();
  const double b0_err = std::abs(b0.squaredNorm() - budget) / budget;
  if (b0_err > 1e-8) throw Error(ErrorCode::InvalidArgument, "B_0 is not on the power sphere");

  RcgResult out;
  out.max_sphere_violation = b0_err;
  Evaluation cur = evaluate(problem, b0);
  out.function_evaluations = 1;
  CMatrix g = tangent_project(cur.b, gradient_at(problem, cur), budget);
  double gn = g.norm();
  out.isl_trace.push_back(cur.value);
  out.grad_norm_trace.push_back(gn);

  CMatrix dir = -g;
  double prev_step = 0.0;

  auto search = [&](const CMatrix& d, double slope, Evaluation& accepted, double& step) {
    double delta = ar.initial_step;
    if (ar.growth > 0.0 && prev_step > 0.0) delta = std::min(ar.initial_step, ar.growth * prev_step);
    for (int k = 0; k <= ar.max_backtracks && delta >= ar.min_step; ++k) {
      Evaluation trial = evaluate(problem, retract(cur.b + delta * d, budget).matrix());
      ++out.function_evaluations;
      if (trial.value <= cur.value + ar.sufficient_decrease * delta * slope) {
        accepted = std::move(trial);
        step = delta;
        return true;
      }
      delta *= ar.contraction;
    }
    return false;
  };

  out.status = SolveStatus::IterationCapReached;
  for (int t = 0; t < problem.max_iterations(); ++t) {
    if (gn <= problem.tolerance()) {
      out.status = SolveStatus::Converged;
      break;
    }
    bool steepest = false;
    double slope = 2.0 * real_inner(g, dir);
    if (!(slope < 0.0)) {
      dir = -g;
      slope = -2.0 * gn * gn;
      steepest = true;
    }
    Evaluation next;
    double step = 0.0;
    bool ok = search(dir, slope, next, step);
    if (!ok && !steepest) {
      ++out.steepest_fallbacks;
      dir = -g;
      slope = -2.0 * gn * gn;
      ok = search(dir, slope, next, step);
    }
    if (!ok) {
      out.status = SolveStatus::LineSearchFailed;
      break;
    }
    prev_step = step;

    const CMatrix g_next = tangent_project(next.b, gradient_at(problem, next), budget);
    const double denom = gn * gn;
    const double eta =
        std::max(0.0, real_inner(g_next, g_next - tangent_project(next.b, g, budget)) / denom);
    dir = -g_next + eta * tangent_project(next.b, dir, budget);

    cur = std::move(next);
    g = g_next;
    gn = g.norm();
    out.iterations = t + 1;
    out.isl_trace.push_back(cur.value);
    out.grad_norm_trace.push_back(gn);
    out.max_sphere_violation =
        std::max(out.max_sphere_violation, std::abs(cur.b.squaredNorm() - budget) / budget);
  }
  if (out.status == SolveStatus::IterationCapReached && gn <= problem.tolerance())
    out.status = SolveStatus::Converged;
  out.b = cur.b;
  return out;
}

RcgResult rcg_optimize(const IslProblem& problem, Engine& engine) {
  return rcg_optimize(problem, random_sphere_point(problem.basis().dim(), problem.comm().cols(),
                                                   problem.budget(), engine));
}

}  // namespace sdisac
