// Copyright 2026 The spinmetro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spinmetro/error.hpp"

namespace spinmetro {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidSpin: return "InvalidSpin";
    case ErrorCode::kInvalidAxis: return "InvalidAxis";
    case ErrorCode::kDegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kDivergentFI: return "DivergentFI";
    case ErrorCode::kBadCoefficients: return "BadCoefficients";
    case ErrorCode::kNonOrthogonalAncilla: return "NonOrthogonalAncilla";
    case ErrorCode::kZeroProjection: return "ZeroProjection";
    case ErrorCode::kOutOfDomain: return "OutOfDomain";
    case ErrorCode::kNotSpecialCase: return "NotSpecialCase";
    case ErrorCode::kUnreachable: return "Unreachable";
    case ErrorCode::kFlatLikelihood: return "FlatLikelihood";
    case ErrorCode::kInvalidConfig: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace spinmetro
