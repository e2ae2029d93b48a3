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

#include <stdexcept>
#include <string>

namespace sdisac {

enum class ErrorCode {
  InvalidArgument = 1,
  DimensionMismatch,
  NullSpaceEmpty,
  RankDeficient,
  DelayOutOfRange,
  PowerBudgetExceeded,
  InvalidRho,
  SolverNotConverged,
  BracketingFailed,
  ZeroPoint,
  NoSidelobeRegion,
  NoMainlobeRegion,
  ConfigError,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sdisac
