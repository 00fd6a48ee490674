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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace spinmetro::cli {

/// Result of one subcommand: CSV text, a JSON summary, and the process
/// exit status.
struct CommandOutput {
  std::string csv;
  std::string json;
  int exit_code = 0;
};

inline constexpr int kDefaultGrid = 200;
inline constexpr int kDefaultMaxDimension = 12;
inline const std::vector<double> kSurfacePanels = {0.2, 0.4, 0.6, 0.7};

/// p = 2/m and max QFI (m-1)^2 for maximal entanglement, m = 2..m_max,
/// next to the brute-force protocol values.
CommandOutput fig_dimension(int m_max, std::uint64_t seed);

/// Spin-1 single-outcome probability over (theta, xi1^2) for each xi2^2.
CommandOutput fig_surface(const std::vector<double>& xi2_sq, int grid, std::uint64_t seed);

/// Spin-1 two-outcome total over (xi2^2, theta) with xi1 = xi3. The
/// xi2^2 = 1/3 row is always included.
CommandOutput fig_contour(int grid, std::uint64_t seed);

/// The two degenerate spin-1 curves as functions of xi3.
CommandOutput fig_appendix(int grid, std::uint64_t seed);

CommandOutput protocol(const RunConfig& cfg, std::uint64_t seed);
CommandOutput estimate(const RunConfig& cfg, std::uint64_t seed);

/// Structural invariant suites; exit_code is 1 if any check fails.
CommandOutput validate(std::uint64_t seed);

}  // namespace spinmetro::cli
