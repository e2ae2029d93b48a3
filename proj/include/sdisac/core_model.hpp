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

#include "sdisac/error.hpp"
#include "sdisac/types.hpp"

namespace sdisac {

struct ChannelMetadata {
  cdouble correlation{0.0, 0.0};  // exponential correlation parameter, 0 if uncorrelated
  double csi_error = 0.0;         // Gauss-Markov error level
};

// K x Nt downlink channel. Row k is h_k^H.
class ChannelMatrix {
 public:
  ChannelMatrix(CMatrix entries, ChannelMetadata meta = {});

  const CMatrix& entries() const { return entries_; }
  const ChannelMetadata& metadata() const { return meta_; }
  int num_users() const { return static_cast<int>(entries_.rows()); }
  int num_tx() const { return static_cast<int>(entries_.cols()); }

  // h_k as a column vector (conjugate of row k).
  CVector user(int k) const { return entries_.row(k).adjoint(); }

 private:
  CMatrix entries_;
  ChannelMetadata meta_;
};

// Semi-unitary Nt x (Nt-K) basis.
class NullSpaceBasis {
 public:
  // Validates Delta^H Delta = I within tol.
  static NullSpaceBasis from_columns(CMatrix columns, double tol = 1e-10);
  static NullSpaceBasis identity(int n);

  const CMatrix& columns() const { return columns_; }
  int num_tx() const { return static_cast<int>(columns_.rows()); }
  int dim() const { return static_cast<int>(columns_.cols()); }

  // Delta * Q for unitary Q.
  NullSpaceBasis rotated(const CMatrix& q) const;

 private:
  explicit NullSpaceBasis(CMatrix columns) : columns_(std::move(columns)) {}
  CMatrix columns_;
};

class PowerSplit {
 public:
  PowerSplit(double total, double comm) : total_(total), comm_(comm) {}
  double total() const { return total_; }
  double comm() const { return comm_; }
  double added() const { return total_ - comm_; }
  double ratio() const { return comm_ / total_; }

 private:
  double total_;
  double comm_;
};

// L x L shift with entry (i,j) = 1 iff j - i = delay (1-based indices).
struct ShiftMatrix {
  int delay;
  int size;
  RMatrix entries;
};

struct TransmitWaveform {
  CMatrix entries;     // X
  CMatrix comm_part;   // X_c
  CMatrix added_part;  // Delta B
};

// Singular values at or below this fraction of the largest count as zero.
inline constexpr double kRankTolerance = 1e-8;

NullSpaceBasis compute_null_space_basis(const ChannelMatrix& h);

ShiftMatrix shift_matrix(int delay, int size);

// X J_delay via column alignment: column j of the result is column j - delay of X.
CMatrix shift_columns(const CMatrix& x, int delay);

TransmitWaveform compose_waveform(const CMatrix& comm, const NullSpaceBasis& basis,
                                  const CMatrix& b);

PowerSplit power_split(double total, double comm);

}  // namespace sdisac
