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

#include "sdisac/channel.hpp"

#include <Eigen/Eigenvalues>
#include <string>

#include "sdisac/rng.hpp"

namespace sdisac {

ChannelMatrix rayleigh_channel(int num_users, int num_tx, std::uint64_t seed) {
  if (num_users < 1 || num_tx < 1 || num_users > num_tx)
    throw Error(ErrorCode::DimensionMismatch, "need 1 <= K <= Nt, got K=" +
                                                  std::to_string(num_users) +
                                                  " Nt=" + std::to_string(num_tx));
  Engine engine = make_engine(seed);
  return ChannelMatrix(complex_gaussian(num_users, num_tx, engine));
}

CorrelationMatrix exponential_correlation(int num_tx, cdouble rho) {
  if (num_tx < 1) throw Error(ErrorCode::DimensionMismatch, "Nt must be positive");
  if (!(std::abs(rho) <= 1.0))
    throw Error(ErrorCode::InvalidRho, "|rho| = " + std::to_string(std::abs(rho)) + " > 1");

  CMatrix r(num_tx, num_tx);
  for (int i = 0; i < num_tx; ++i) {
    r(i, i) = 1.0;
    cdouble p = 1.0;
    for (int j = i + 1; j < num_tx; ++j) {
      p *= rho;
      r(i, j) = p;
      r(j, i) = std::conj(p);
    }
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> eig(r);
  const RVector root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  CMatrix s = eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().adjoint();
  return CorrelationMatrix{std::move(r), std::move(s), rho};
}

CsiModel make_csi_model(const CMatrix& estimate, double error_level,
                        const CorrelationMatrix& correlation) {
  if (!(error_level >= 0.0 && error_level <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "CSI error level must lie in [0, 1]");
  if (estimate.cols() != correlation.entries.rows())
    throw Error(ErrorCode::DimensionMismatch, "estimate and correlation disagree on Nt");
  return CsiModel{estimate, error_level, correlation};
}

CsiRealization gauss_markov_realization(const CsiModel& model, std::uint64_t seed) {
  const Index k = model.estimate.rows();
  const Index nt = model.estimate.cols();
  if (model.correlation.sqrt.rows() != nt)
    throw Error(ErrorCode::DimensionMismatch, "estimate and correlation disagree on Nt");

  const double mu = model.error_level;
  const double keep = std::sqrt(1.0 - mu * mu);
  Engine engine = make_engine(seed);
  const CMatrix e = complex_gaussian(k, nt, engine);

  const CMatrix& root = model.correlation.sqrt;
  ChannelMetadata meta{model.correlation.rho, mu};
  CMatrix est = (keep * model.estimate) * root;
  CMatrix truth = (keep * model.estimate + mu * e) * root;
  return CsiRealization{ChannelMatrix(std::move(truth), meta), ChannelMatrix(std::move(est), meta)};
}

}  // namespace sdisac
