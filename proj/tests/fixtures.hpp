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

// Shared state generators for the protocol and acceptance suites.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "spinmetro/entangle.hpp"

namespace spinmetro::fixtures {

inline BipartiteState random_state(std::mt19937_64& rng, Eigen::Index m) {
  std::normal_distribution<double> g;
  CMatrix chi(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) chi(i, j) = Complex(g(rng), g(rng));
  }
  return BipartiteState(chi / chi.norm());
}

/// sum over `branches` of w_i |phi_i> (x) |a_i> with random ancilla kets a_i:
/// the other branches have c_i = 0, which leaves the solution space for the
/// measurement vector more than one-dimensional.
inline BipartiteState sparse_branch_state(std::mt19937_64& rng, const OptimalBasis& basis,
                                          const std::vector<Eigen::Index>& branches) {
  const Eigen::Index m = basis.dim();
  CMatrix chi = CMatrix::Zero(m, m);
  std::uniform_real_distribution<double> w(0.3, 1.0);
  for (Eigen::Index i : branches) chi += w(rng) * basis.phi(i) * oracle::random_unit(rng, m).transpose();
  return BipartiteState(chi / chi.norm());
}

inline std::array<double, 3> spin1_xi(double xi1_sq, double xi2_sq) {
  return {std::sqrt(xi1_sq), std::sqrt(xi2_sq), std::sqrt(std::max(0.0, 1.0 - xi1_sq - xi2_sq))};
}

}  // namespace spinmetro::fixtures
