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

#include "spinmetro/entangle.hpp"

#include <cmath>
#include <string>

#include "spinmetro/error.hpp"

namespace spinmetro {

BipartiteState::BipartiteState(CMatrix chi) : chi_(std::move(chi)) {
  if (chi_.rows() != chi_.cols() || chi_.rows() < 2) {
    throw Error(ErrorCode::kDimensionMismatch, "chi must be square with dimension >= 2");
  }
  if (!linalg::all_finite(chi_)) throw Error(ErrorCode::kNonFinite, "chi has non-finite entries");
  const double norm2 = chi_.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw Error(ErrorCode::kNotNormalized, "sum |chi_ij|^2 = " + std::to_string(norm2));
  }
}

CVector BipartiteState::joint() const {
  const Eigen::Index m = dim();
  CVector v(m * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) v[i * m + j] = chi_(i, j);
  }
  return v;
}

int SchmidtForm::rank(double tol) const { return static_cast<int>((xis.array() > tol).count()); }

CMatrix SchmidtForm::reconstruct() const { return us * xis.cast<Complex>().asDiagonal() * vs.transpose(); }

SchmidtForm schmidt(const BipartiteState& psi) {
  // chi = U S V^dagger, so the ancilla kets are the conjugated right vectors.
  linalg::Svd d = linalg::svd(psi.chi());
  return SchmidtForm{std::move(d.values), std::move(d.left), d.right.conjugate()};
}

double AncillaDecomposition::gram_defect() const {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < dim(); ++i) {
    if (!is_present(i)) continue;
    for (Eigen::Index j = 0; j < dim(); ++j) {
      if (!is_present(j)) continue;
      const Complex target = i == j ? Complex(1.0) : Complex(0.0);
      worst = std::max(worst, std::abs(gram(i, j) - target));
    }
  }
  return worst;
}

CVector AncillaDecomposition::reassemble() const {
  const Eigen::Index m = dim();
  CVector out = CVector::Zero(m * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!is_present(i)) continue;
    for (Eigen::Index a = 0; a < m; ++a) {
      out.segment(a * m, m) += cs[i] * probe_basis(a, i) * psis.col(i);
    }
  }
  return out;
}

AncillaDecomposition ancilla_decomposition(const BipartiteState& psi, const OptimalBasis& basis) {
  const Eigen::Index m = psi.dim();
  if (basis.dim() != m || basis.vectors.rows() != m) {
    throw Error(ErrorCode::kDimensionMismatch, "probe basis dimension does not match the state");
  }
  AncillaDecomposition d;
  // psi~_i[j] = sum_k conj(phi_i[k]) chi_kj
  d.unnormalized = psi.chi().transpose() * basis.vectors.conjugate();
  d.cs.resize(m);
  d.psis = CMatrix::Zero(m, m);
  d.present.assign(static_cast<std::size_t>(m), false);
  for (Eigen::Index i = 0; i < m; ++i) {
    d.cs[i] = d.unnormalized.col(i).norm();
    if (d.cs[i] > kPresenceTol) {
      d.present[static_cast<std::size_t>(i)] = true;
      d.psis.col(i) = d.unnormalized.col(i) / d.cs[i];
    }
  }
  d.gram = d.psis.adjoint() * d.psis;
  d.probe_basis = basis.vectors;
  return d;
}

BipartiteState maximally_entangled(Eigen::Index m) {
  if (m < 2) throw Error(ErrorCode::kDimensionMismatch, "maximally_entangled needs m >= 2");
  return BipartiteState(CMatrix::Identity(m, m) / std::sqrt(static_cast<double>(m)));
}

BipartiteState diagonal_state(std::span<const double> xis) {
  const auto m = static_cast<Eigen::Index>(xis.size());
  CMatrix chi = CMatrix::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) chi(k, k) = xis[static_cast<std::size_t>(k)];
  return BipartiteState(std::move(chi));
}

BipartiteState max_prob_state(const HamiltonianSpectrum& spec, double xi1, double xi2) {
  if (!(xi1 > 0.0) || !(xi2 > 0.0) || std::abs(xi1 * xi1 + xi2 * xi2 - 1.0) > 1e-12) {
    throw Error(ErrorCode::kBadCoefficients, "need xi1, xi2 > 0 with xi1^2 + xi2^2 = 1");
  }
  const OptimalStates n = optimal_states(spec);
  CMatrix chi = xi1 * n.plus * n.minus.transpose() - xi2 * n.minus * n.plus.transpose();
  chi /= chi.norm();
  return BipartiteState(std::move(chi));
}

}  // namespace spinmetro
