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

#include "sdisac/error.hpp"

namespace sdisac {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NullSpaceEmpty: return "NullSpaceEmpty";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::DelayOutOfRange: return "DelayOutOfRange";
    case ErrorCode::PowerBudgetExceeded: return "PowerBudgetExceeded";
    case ErrorCode::InvalidRho: return "InvalidRho";
    case ErrorCode::SolverNotConverged: return "SolverNotConverged";
    case ErrorCode::BracketingFailed: return "BracketingFailed";
    case ErrorCode::ZeroPoint: return "ZeroPoint";
    case ErrorCode::NoSidelobeRegion: return "NoSidelobeRegion";
    case ErrorCode::NoMainlobeRegion: return "NoMainlobeRegion";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(what), code_(code) {}

}  // namespace sdisac
