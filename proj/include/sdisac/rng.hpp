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
#include <random>

#include "sdisac/types.hpp"

namespace sdisac {

using Engine = std::mt19937_64;

// Independent random streams drawn within one trial.
enum class Stream : std::uint64_t {
  Channel = 1,
  CsiEstimate = 2,
  CsiError = 3,
  Symbols = 4,
  Init = 5,
  RadarInit = 6,
};

// Mixes (master, trial, stream) into a 64-bit seed; distinct keys give
// statistically independent engines regardless of evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial, Stream tag);

Engine make_engine(std::uint64_t seed);

// i.i.d. CN(0,1) entries.
CMatrix complex_gaussian(Index rows, Index cols, Engine& engine);

// Uniform point on the sphere ||B||_F^2 = budget.
CMatrix random_sphere_point(Index rows, Index cols, double budget, Engine& engine);

}  // namespace sdisac
