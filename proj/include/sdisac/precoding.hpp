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
#include <string>
#include <vector>

#include "sdisac/channel.hpp"
#include "sdisac/core_model.hpp"

namespace sdisac {

struct QosConfig {
  std::vector<double> sinr_targets;  // linear
  double noise_var;
  int block_len;

  static QosConfig uniform(int num_users, double sinr_target, double noise_var, int block_len);
  double noise_power() const { return block_len * noise_var; }
  void validate(int num_users) const;
};

struct Precoder {
  CMatrix beams;                      // F, Nt x K
  double comm_power;                  // ||F||_F^2 / L
  std::vector<double> achieved_sinr;  // feasibility certificate
  double dual_objective;              // sum of uplink powers, equals ||F||_F^2 at the optimum
  int iterations;
};

struct SymbolBlock {
  CMatrix symbols;  // K x L
  std::string constellation;
};

inline constexpr int kPrecoderMaxIterations = 10000;
inline constexpr double kPrecoderTolerance = 1e-9;

// Minimum-power SINR-constrained precoder via the uplink-downlink duality fixed point.
Precoder min_power_precoder(const ChannelMatrix& h, const QosConfig& qos);

// Same beam directions rescaled to a prescribed communication power.
Precoder rescale_precoder(const Precoder& p, const ChannelMatrix& h, const QosConfig& qos,
                          double comm_power);

SymbolBlock generate_symbols(int num_users, int block_len, std::uint64_t seed);

std::vector<double> achieved_sinr(const ChannelMatrix& h, const CMatrix& beams,
                                  const QosConfig& qos);

// SINR with the added signal as extra interference: ||h_k^H Delta B||^2 joins the denominator.
std::vector<double> achieved_sinr(const ChannelMatrix& h, const CMatrix& beams,
                                  const QosConfig& qos, const CMatrix& added);

// Per-block SINR from a realized transmit block X: user k's desired term is
// (h_k^H f_k) s_k^T; everything else in h_k^H X counts as interference.
std::vector<double> realized_sinr(const ChannelMatrix& h, const CMatrix& beams,
                                  const CMatrix& symbols, const CMatrix& x, const QosConfig& qos);

double sum_rate(const std::vector<double>& sinr);
double sum_rate(const ChannelMatrix& h, const CMatrix& beams, const QosConfig& qos);

double effective_interference_energy(const CMatrix& x, const CorrelationMatrix& r, double mu);

}  // namespace sdisac
