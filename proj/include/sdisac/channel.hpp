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

#include <cstdint>

#include "sdisac/core_model.hpp"

namespace sdisac {

struct CorrelationMatrix {
  CMatrix entries;  // R
  CMatrix sqrt;     // principal root R^{1/2}
  cdouble rho;
};

struct CsiModel {
  CMatrix estimate;  // K x Nt
  double error_level;
  CorrelationMatrix correlation;
};

struct CsiRealization {
  ChannelMatrix truth;
  ChannelMatrix estimate;
};

ChannelMatrix rayleigh_channel(int num_users, int num_tx, std::uint64_t seed);

// R_ij = rho^(j-i) for j >= i, Hermitian below the diagonal.
CorrelationMatrix exponential_correlation(int num_tx, cdouble rho);

CsiModel make_csi_model(const CMatrix& estimate, double error_level,
                        const CorrelationMatrix& correlation);

CsiRealization gauss_markov_realization(const CsiModel& model, std::uint64_t seed);

}  // namespace sdisac
