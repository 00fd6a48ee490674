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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace spinmetro {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

namespace linalg {

/// Default tolerance for the Hermitian check (relative to the largest entry).
inline constexpr double kHermitianTol = 1e-12;
/// Two eigenvalues closer than this are reported as degenerate.
inline constexpr double kDegeneracyTol = 1e-9;
/// Entries below this magnitude are ignored when fixing eigenvector phases.
inline constexpr double kPhaseEntryTol = 1e-9;

struct HermitianEig {
  RVector values;        // descending
  CMatrix vectors;       // column i pairs with values[i]
  bool degenerate = false;
};

struct Svd {
  RVector values;        // descending, nonnegative
  CMatrix left;          // columns u_k
  CMatrix right;         // columns v_k, M = sum_k s_k u_k v_k^dagger
};

bool all_finite(const CMatrix& m);
bool all_finite(const CVector& v);

/// max |M - M^dagger| over all entries.
double hermiticity_defect(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double tol = kHermitianTol);

/// Rotates the global phase so that the last entry with magnitude above
/// kPhaseEntryTol is real and positive.
CVector fix_phase(CVector v);

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending and
/// eigenvectors phase-fixed with fix_phase. Throws kNotHermitian.
HermitianEig hermitian_eig(const CMatrix& m);

Svd svd(const CMatrix& m);

/// (I - P) target, P the orthogonal projector onto span(vectors). The span is
/// orthonormalized by modified Gram-Schmidt with one re-orthogonalization
/// pass; spanning vectors that are numerically dependent are skipped.
CVector project_complement(std::span<const CVector> vectors, const CVector& target);

/// Orthonormal basis of span(vectors) (same construction as project_complement).
std::vector<CVector> orthonormalize(std::span<const CVector> vectors);

/// Extends an orthonormal family to a full orthonormal basis of C^dim.
/// The given columns come first, in order; the fill is drawn greedily from the
/// computational basis.
CMatrix complete_basis(std::span<const CVector> orthonormal, Eigen::Index dim);

/// |<a|b>|^2 / (|a|^2 |b|^2)
double fidelity(const CVector& a, const CVector& b);

/// Kronecker product A (x) B.
CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace linalg
}  // namespace spinmetro
