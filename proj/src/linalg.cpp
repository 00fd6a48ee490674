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

#include "spinmetro/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "spinmetro/error.hpp"

namespace spinmetro::linalg {

namespace {

// Residual norm (relative to the input) below which a spanning vector is
// treated as linearly dependent on its predecessors.
constexpr double kDependenceTol = 1e-10;

void require_finite(const CMatrix& m, const char* what) {
  if (!all_finite(m)) throw Error(ErrorCode::kNonFinite, std::string(what) + " has non-finite entries");
}

}  // namespace

bool all_finite(const CMatrix& m) {
  return m.unaryExpr([](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); })
      .all();
}

bool all_finite(const CVector& v) {
  return v.unaryExpr([](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); })
      .all();
}

double hermiticity_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return hermiticity_defect(m) < tol * scale;
}

CVector fix_phase(CVector v) {
  for (Eigen::Index i = v.size() - 1; i >= 0; --i) {
    const double mag = std::abs(v[i]);
    if (mag > kPhaseEntryTol) {
      v *= std::conj(v[i]) / mag;
      v[i] = Complex(mag, 0.0);
      break;
    }
  }
  return v;
}

HermitianEig hermitian_eig(const CMatrix& m) {
  require_finite(m, "matrix");
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "hermitian_eig needs a non-empty square matrix");
  }
  if (!is_hermitian(m)) {
    throw Error(ErrorCode::kNotHermitian,
                "max |M - M^dagger| = " + std::to_string(hermiticity_defect(m)));
  }
  // Symmetrize away the sub-tolerance defect before handing it to the solver.
  const CMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm);

  const Eigen::Index n = m.rows();
  HermitianEig out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  // Eigen sorts ascending.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values[i] = solver.eigenvalues()[n - 1 - i];
    out.vectors.col(i) = fix_phase(solver.eigenvectors().col(n - 1 - i));
  }
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (out.values[i] - out.values[i + 1] < kDegeneracyTol) out.degenerate = true;
  }
  return out;
}

Svd svd(const CMatrix& m) {
  require_finite(m, "matrix");
  Eigen::JacobiSVD<CMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return Svd{solver.singularValues(), solver.matrixU(), solver.matrixV()};
}

std::vector<CVector> orthonormalize(std::span<const CVector> vectors) {
  std::vector<CVector> basis;
  basis.reserve(vectors.size());
  for (const CVector& v : vectors) {
    const double scale = v.norm();
    if (scale == 0.0) continue;
    CVector w = v;
    // Two MGS sweeps; the second restores orthogonality lost to cancellation.
    for (int pass = 0; pass < 2; ++pass) {
      for (const CVector& q : basis) w -= q.dot(w) * q;
    }
    const double norm = w.norm();
    if (norm > kDependenceTol * scale) basis.push_back(w / norm);
  }
  return basis;
}

CVector project_complement(std::span<const CVector> vectors, const CVector& target) {
  for (const CVector& v : vectors) {
    if (v.size() != target.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "project_complement: spanning vector dimension mismatch");
    }
  }
  const std::vector<CVector> basis = orthonormalize(vectors);
  CVector out = target;
  for (int pass = 0; pass < 2; ++pass) {
    for (const CVector& q : basis) out -= q.dot(out) * q;
  }
  return out;
}

CMatrix complete_basis(std::span<const CVector> orthonormal, Eigen::Index dim) {
  std::vector<CVector> cols(orthonormal.begin(), orthonormal.end());
  for (const CVector& c : cols) {
    if (c.size() != dim) throw Error(ErrorCode::kDimensionMismatch, "complete_basis: dimension mismatch");
  }
  while (static_cast<Eigen::Index>(cols.size()) < dim) {
    CVector best;
    double best_norm = -1.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
      CVector e = CVector::Zero(dim);
      e[k] = 1.0;
      CVector r = project_complement(cols, e);
      const double n = r.norm();
      if (n > best_norm + 1e-12) {
        best_norm = n;
        best = std::move(r);
      }
    }
    cols.push_back(best / best_norm);
  }
  CMatrix out(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) out.col(k) = cols[static_cast<std::size_t>(k)];
  return out;
}

double fidelity(const CVector& a, const CVector& b) {
  const double na = a.squaredNorm();
  const double nb = b.squaredNorm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::norm(a.dot(b)) / (na * nb);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace spinmetro::linalg
