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
#include <functional>
#include <string>
#include <vector>

namespace spinmetro {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest observed defect
  double tolerance = 0.0;  // defect must stay below this
  std::string detail;
};

/// Structural invariant suites behind `spinmetro validate`: spin algebra,
/// spectra, Schmidt round trips, ancilla Gram matrices, beta-independence of
/// the success probability, post-state fidelity and QFI, closed-form versus
/// brute-force probabilities, projector orthogonality.
std::vector<CheckResult> run_structural_checks(std::uint64_t seed = 20240611);

}  // namespace spinmetro
