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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinmetro/estimator.hpp"

namespace spinmetro::cli {

/// Run parameters for `protocol` and `estimate`, read from a flat
/// `key = value` file. Angles are in radians; lists are comma-separated.
struct RunConfig {
  double spin = 1.0;          // s (half-integer); `m = 2s + 1` is accepted too
  double theta = 1.0;         // rotation axis polar angle in [0, pi]
  double beta = 0.4;          // true phase
  std::string state = "maximal";  // maximal | maxprob | diagonal | chi
  std::vector<double> xi;     // maxprob: xi1, xi2; diagonal: xi_1..xi_m
  std::vector<double> chi;    // row-major real part of chi (state = chi)
  std::vector<double> chi_imag;  // optional imaginary part, same layout
  std::string target = "minus";  // minus | plus
  long long shots = 10000;
  int trials = 200;
  int threads = 1;
  std::optional<std::uint64_t> seed;
};

/// Keys accepted by parse_config, for --help.
std::string_view config_help();

/// Throws Error(kInvalidConfig) naming the line and field on any problem.
RunConfig parse_config(std::string_view text, std::string_view source = "<config>");
RunConfig load_config(const std::string& path);

/// Flag, then config file, then SPINMETRO_SEED, then 0.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const RunConfig* config);

/// A validated configuration: every module precondition has been checked.
struct PreparedRun {
  ProtocolSetup setup;
  double beta = 0.0;
};

/// Builds the spin system, axis and joint state. Module errors are rethrown
/// as kInvalidConfig naming the offending field.
PreparedRun prepare(const RunConfig& cfg);

}  // namespace spinmetro::cli
