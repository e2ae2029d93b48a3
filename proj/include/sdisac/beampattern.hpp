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

#include "sdisac/channel.hpp"
#include "sdisac/core_model.hpp"
#include "sdisac/rng.hpp"

namespace sdisac {

// Uniform grid theta_u = -90 + u * 180 / U, u = 0..U-1. The +90 endpoint is
// omitted because a half-wavelength ULA steers identically at -90 and +90.
class AngleGrid {
 public:
  static AngleGrid uniform(int size);
  const std::vector<double>& degrees() const { return degrees_; }
  int size() const { return static_cast<int>(degrees_.size()); }
  double resolution() const { return resolution_; }

 private:
  std::vector<double> degrees_;
  double resolution_ = 0.0;
};

struct ReferenceBeampattern {
  std::vector<double> targets;  // degrees
  double beam_width;            // degrees
  double scale;                 // c
  RVector values;               // d(theta_u)
  std::vector<bool> mainlobe;   // theta_u inside some target interval

  int mainlobe_count() const;
};

// Hermitian eigendecomposition M = Q diag(values) Q^H.
struct QuadraticSystem {
  CMatrix vectors;
  RVector values;

  static QuadraticSystem from_hermitian(const CMatrix& m);
};

class BeampatternProblem {
 public:
  BeampatternProblem(CMatrix comm, NullSpaceBasis basis, const AngleGrid& grid,
                     ReferenceBeampattern reference, double budget, double tolerance = 1e-4,
                     int max_iterations = 500);

  const CMatrix& comm() const { return comm_; }
  const NullSpaceBasis& basis() const { return basis_; }
  const AngleGrid& grid() const { return grid_; }
  const ReferenceBeampattern& reference() const { return reference_; }
  double budget() const { return budget_; }
  double tolerance() const { return tolerance_; }
  int max_iterations() const { return max_iterations_; }

  const CMatrix& a() const { return a_; }            // Delta^H a(theta_u), (Nt-K) x U
  const CMatrix& z() const { return z_; }            // X_c^H a(theta_u), L x U
  const RVector& sqrt_ref() const { return sqrt_d_; }
  const CMatrix& aah() const { return aah_; }        // A A^H
  const CMatrix& azh() const { return azh_; }        // A Z^H
  const QuadraticSystem& system() const { return system_; }

 private:
  CMatrix comm_;
  NullSpaceBasis basis_;
  AngleGrid grid_;
  ReferenceBeampattern reference_;
  double budget_;
  double tolerance_;
  int max_iterations_;
  CMatrix a_, z_, aah_, azh_;
  RVector sqrt_d_;
  QuadraticSystem system_;
};

struct Majorizer {
  CMatrix d;              // D_t
  int degenerate_terms;   // mainlobe terms with vanishing norm, zeroed
};

struct TrustRegionStep {
  CMatrix b;
  double lambda;
  bool hard_case;
};

enum class SolveStatus { Converged, IterationCapReached, LineSearchFailed };

const char* to_string(SolveStatus s) noexcept;

struct MmResult {
  CMatrix b;
  std::vector<double> cost_trace;  // objective at B_0, B_1, ...
  int iterations = 0;
  SolveStatus status = SolveStatus::IterationCapReached;
  int degenerate_terms = 0;
  double beampattern_cost = 0.0;   // g(B*) without any interference penalty
  double max_sphere_violation = 0.0;
};

CVector steering_vector(double theta_deg, int num_antennas);
CMatrix steering_matrix(const AngleGrid& grid, int num_antennas);

double beampattern(const CMatrix& x, double theta_deg);
RVector beampattern(const CMatrix& x, const AngleGrid& grid);

ReferenceBeampattern reference_pattern(const std::vector<double>& targets, double beam_width,
                                       const AngleGrid& grid, double scale);

// Scale that matches sum_u c d_u to a given total radiated gain sum_u G_u.
double energy_matched_scale(double total_gain, const ReferenceBeampattern& unit_reference);

double beampattern_cost(const CMatrix& b, const BeampatternProblem& problem);
double beampattern_cost_expanded(const CMatrix& b, const BeampatternProblem& problem);

Majorizer majorizer_matrix(const CMatrix& bt, const BeampatternProblem& problem);

// Quadratic surrogate with its constant fixed by tightness at B_t.
double surrogate_value(const CMatrix& b, const CMatrix& bt, const Majorizer& maj,
                       const BeampatternProblem& problem);

// P(lambda) = sum |[Q^H G]_ij|^2 / (lambda_i + lambda)^2.
double secular_power(const CMatrix& qhg, const RVector& values, double lambda);

// Minimizes Tr(B^H M B) - 2 Re Tr(B^H G) subject to ||B||_F^2 = budget.
TrustRegionStep solve_trust_region(const CMatrix& g, const QuadraticSystem& system, double budget);
TrustRegionStep solve_trust_region(const CMatrix& g, const CMatrix& a, double budget);

MmResult mm_beampattern_optimize(const BeampatternProblem& problem, const CMatrix& b0);
MmResult mm_beampattern_optimize(const BeampatternProblem& problem, Engine& engine);

// Minimizes omega g(B) + (1 - omega) mu^2 ||R^{1/2}(X_c + Delta B)||_F^2.
MmResult mm_beampattern_optimize_imperfect(const BeampatternProblem& problem,
                                           const CorrelationMatrix& r, double mu, double omega,
                                           const CMatrix& b0);

double peak_sidelobe_ratio(const CMatrix& x, const AngleGrid& grid,
                           const ReferenceBeampattern& reference);
double peak_sidelobe_ratio(const RVector& gains, const ReferenceBeampattern& reference);

}  // namespace sdisac
