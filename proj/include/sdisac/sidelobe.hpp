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

#include <vector>

#include "sdisac/beampattern.hpp"
#include "sdisac/core_model.hpp"
#include "sdisac/rng.hpp"

namespace sdisac {

struct ArmijoOptions {
  double initial_step = 1.0;
  double contraction = 0.5;
  double sufficient_decrease = 1e-4;
  int max_backtracks = 50;
  double min_step = 1e-16;
  // Start each search at min(initial_step, growth * previous accepted step); 0 disables.
  double growth = 0.0;
};

class IslProblem {
 public:
  IslProblem(CMatrix comm, NullSpaceBasis basis, int max_lag, double budget,
             double tolerance = 1e-4, int max_iterations = 1000, ArmijoOptions armijo = {});

  const CMatrix& comm() const { return comm_; }
  const NullSpaceBasis& basis() const { return basis_; }
  int max_lag() const { return max_lag_; }
  double budget() const { return budget_; }
  double tolerance() const { return tolerance_; }
  int max_iterations() const { return max_iterations_; }
  const ArmijoOptions& armijo() const { return armijo_; }
  int block_len() const { return static_cast<int>(comm_.cols()); }

 private:
  CMatrix comm_;
  NullSpaceBasis basis_;
  int max_lag_;
  double budget_;
  double tolerance_;
  int max_iterations_;
  ArmijoOptions armijo_;
};

class SpherePoint {
 public:
  SpherePoint(CMatrix b, double budget) : b_(std::move(b)), budget_(budget) {}
  const CMatrix& matrix() const { return b_; }
  double budget() const { return budget_; }

 private:
  CMatrix b_;
  double budget_;
};

struct RcgResult {
  CMatrix b;
  std::vector<double> isl_trace;        // ISL at B_0, B_1, ...
  std::vector<double> grad_norm_trace;  // ||grad r(B_t)||_F at the same iterates
  int iterations = 0;
  SolveStatus status = SolveStatus::IterationCapReached;
  int steepest_fallbacks = 0;
  int function_evaluations = 0;
  double max_sphere_violation = 0.0;
};

// Omega_tau = X J_tau X^H via column alignment.
CMatrix correlation_matrix(const CMatrix& x, int tau);

double isl(const CMatrix& x, int max_lag);

// Element tau-1 is ||Omega_tau||_F^2, tau = 1..P-1.
RVector per_lag_sidelobes(const CMatrix& x, int max_lag);

// Conjugate gradient: r(B + t Xi) = r(B) + 2 t Re<grad, Xi> + O(t^2).
CMatrix isl_gradient(const CMatrix& b, const IslProblem& problem);

CMatrix tangent_project(const CMatrix& b, const CMatrix& g, double budget);

SpherePoint retract(const CMatrix& b, double budget);

RcgResult rcg_optimize(const IslProblem& problem, const CMatrix& b0);
RcgResult rcg_optimize(const IslProblem& problem, Engine& engine);

}  // namespace sdisac
