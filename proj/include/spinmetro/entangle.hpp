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

#include <optional>
#include <vector>

#include "spinmetro/fisher.hpp"

namespace spinmetro {

/// Probe-ancilla pure state sum_ij chi_ij |i-1>_A |j-1>_B; rows index the
/// probe, columns the ancilla.
class BipartiteState {
 public:
  /// Throws kNotNormalized unless sum |chi_ij|^2 = 1 within 1e-12, and
  /// kDimensionMismatch unless chi is square with dimension >= 2.
  explicit BipartiteState(CMatrix chi);

  const CMatrix& chi() const noexcept { return chi_; }
  Eigen::Index dim() const noexcept { return chi_.rows(); }

  /// Joint vector with entry (i, j) at index i * m + j.
  CVector joint() const;

 private:
  CMatrix chi_;
};

struct SchmidtForm {
  RVector xis;  // descending
  CMatrix us;   // probe kets, columns
  CMatrix vs;   // ancilla kets, columns

  int rank(double tol = 1e-10) const;
  /// sum_k xi_k u_k v_k^T, the coefficient matrix of sum_k xi_k |u_k>|v_k>.
  CMatrix reconstruct() const;
};

inline constexpr double kPresenceTol = 1e-12;

/// |Psi> = sum_i c_i |phi_i>_A |psi_i>_B with respect to a probe basis.
struct AncillaDecomposition {
  RVector cs;
  CMatrix unnormalized;       // column i is psi~_i = (<phi_i| (x) I)|Psi>
  CMatrix psis;               // column i is psi_i, zero where absent
  std::vector<bool> present;  // c_i > kPresenceTol
  CMatrix gram;               // <psi_i|psi_j> for present i, j; zero elsewhere
  CMatrix probe_basis;        // the phi_i the decomposition was taken in

  Eigen::Index dim() const noexcept { return cs.size(); }
  bool is_present(Eigen::Index i) const { return present[static_cast<std::size_t>(i)]; }
  CVector psi(Eigen::Index i) const { return psis.col(i); }
  /// Largest |gram - I| entry over present indices.
  double gram_defect() const;
  /// Re-assembles sum_i c_i phi_i (x) psi_i as a joint vector.
  CVector reassemble() const;
};

SchmidtForm schmidt(const BipartiteState& psi);

AncillaDecomposition ancilla_decomposition(const BipartiteState& psi, const OptimalBasis& basis);

/// chi = I / sqrt(m).
BipartiteState maximally_entangled(Eigen::Index m);

/// chi = diag(xi_1, ..., xi_m); the xi must be normalized.
BipartiteState diagonal_state(std::span<const double> xis);

/// The p = 1 encoding xi1 |n+>|n-> - xi2 |n->|n+>, i.e.
/// chi_ij = xi1 M_1i M_2j - xi2 M_2i M_1j with M rows n+ and n- in the
/// computational basis. Throws kBadCoefficients unless xi1, xi2 > 0 and
/// xi1^2 + xi2^2 = 1 within 1e-12.
BipartiteState max_prob_state(const HamiltonianSpectrum& spec, double xi1, double xi2);

}  // namespace spinmetro
