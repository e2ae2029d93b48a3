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

#include "sdisac/core_model.hpp"

#include <Eigen/SVD>
#include <cstdlib>
#include <string>

namespace sdisac {

namespace {

std::string dims(Index r, Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

ChannelMatrix::ChannelMatrix(CMatrix entries, ChannelMetadata meta)
    : entries_(std::move(entries)), meta_(meta) {
  if (entries_.rows() < 1 || entries_.cols() < 1)
    throw Error(ErrorCode::DimensionMismatch, "channel must be non-empty");
  if (entries_.rows() > entries_.cols())
    throw Error(ErrorCode::DimensionMismatch,
                "channel has more users than antennas: " + dims(entries_.rows(), entries_.cols()));
}

NullSpaceBasis NullSpaceBasis::from_columns(CMatrix columns, double tol) {
  if (columns.cols() > columns.rows())
    throw Error(ErrorCode::DimensionMismatch, "basis has more columns than rows");
  const Index n = columns.cols();
  const double err = (columns.adjoint() * columns - CMatrix::Identity(n, n)).norm();
  if (!(err <= tol))
    throw Error(ErrorCode::InvalidArgument,
                "basis is not semi-unitary (error " + std::to_string(err) + ")");
  return NullSpaceBasis(std::move(columns));
}

NullSpaceBasis NullSpaceBasis::identity(int n) {
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "identity basis needs n >= 1");
  return NullSpaceBasis(CMatrix::Identity(n, n));
}

NullSpaceBasis NullSpaceBasis::rotated(const CMatrix& q) const {
  if (q.rows() != dim() || q.cols() != dim())
    throw Error(ErrorCode::DimensionMismatch, "rotation must be " + dims(dim(), dim()));
  return from_columns(columns_ * q, 1e-9);
}

NullSpaceBasis compute_null_space_basis(const ChannelMatrix& h) {
  const int k = h.num_users();
  const int nt = h.num_tx();
  if (k == nt) throw Error(ErrorCode::NullSpaceEmpty, "K = Nt leaves no null space");

  Eigen::JacobiSVD<CMatrix> svd(h.entries(), Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  if (!(s(k - 1) > kRankTolerance * s(0)))
    throw Error(ErrorCode::RankDeficient,
                "channel rank below K (sigma_K / sigma_1 = " + std::to_string(s(k - 1) / s(0)) + ")");
  return NullSpaceBasis::from_columns(svd.matrixV().rightCols(nt - k));
}

ShiftMatrix shift_matrix(int delay, int size) {
  if (size < 1) throw Error(ErrorCode::DimensionMismatch, "shift size must be positive");
  if (std::abs(delay) >= size)
    throw Error(ErrorCode::DelayOutOfRange,
                "delay " + std::to_string(delay) + " outside (-" + std::to_string(size) + ", " +
                    std::to_string(size) + ")");
  ShiftMatrix out{delay, size, RMatrix::Zero(size, size)};
  for (int i = 0; i < size; ++i) {
    const int j = i + delay;
    if (j >= 0 && j < size) out.entries(i, j) = 1.0;
  }
  return out;
}

CMatrix shift_columns(const CMatrix& x, int delay) {
  const Index l = x.cols();
  if (std::abs(delay) >= l)
    throw Error(ErrorCode::DelayOutOfRange, "delay " + std::to_string(delay) + " out of range");
  CMatrix out = CMatrix::Zero(x.rows(), l);
  const Index n = l - std::abs(delay);
  if (delay >= 0)
    out.rightCols(n) = x.leftCols(n);
  else
    out.leftCols(n) = x.rightCols(n);
  return out;
}

TransmitWaveform compose_waveform(const CMatrix& comm, const NullSpaceBasis& basis,
                                  const CMatrix& b) {
  if (comm.rows() != basis.num_tx() || b.rows() != basis.dim() || b.cols() != comm.cols())
    throw Error(ErrorCode::DimensionMismatch,
                "X_c " + dims(comm.rows(), comm.cols()) + ", Delta " +
                    dims(basis.num_tx(), basis.dim()) + ", B " + dims(b.rows(), b.cols()));
  TransmitWaveform w;
  w.comm_part = comm;
  w.added_part = basis.columns() * b;
  w.entries = w.comm_part + w.added_part;
  return w;
}

PowerSplit power_split(double total, double comm) {
  if (!(total > 0.0)) throw Error(ErrorCode::InvalidArgument, "total power must be positive");
  if (!(comm >= 0.0)) throw Error(ErrorCode::InvalidArgument, "communication power must be >= 0");
  if (comm > total)
    throw Error(ErrorCode::PowerBudgetExceeded,
                "P_c = " + std::to_string(comm) + " exceeds P_t = " + std::to_string(total));
  return PowerSplit(total, comm);
}

}  // namespace sdisac
