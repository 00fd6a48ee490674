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

// Independent reference values for the test suites. Nothing here calls into
// the spectral machinery of the library: every expression is written out
// from the closed forms or computed by an unrelated numerical route.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

namespace spinmetro::oracle {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline CVector vec(std::initializer_list<Complex> xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Complex x : xs) v[i++] = x;
  return v;
}

/// exp(-i beta H) by a truncated Taylor series.
inline CMatrix taylor_expm(const CMatrix& h, double beta, int terms = 20) {
  const CMatrix a = Complex(0.0, -beta) * h;
  CMatrix out = CMatrix::Identity(h.rows(), h.cols());
  CMatrix term = out;
  for (int k = 1; k < terms; ++k) {
    term = term * a / static_cast<double>(k);
    out += term;
  }
  return out;
}

/// Spin-1 operators written out by hand (hbar = 1).
inline CMatrix spin1_sx() {
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = 1.0 / std::sqrt(2.0);
  return m;
}
inline CMatrix spin1_sz() {
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(2, 2) = -1.0;
  return m;
}

/// Spin-1 eigenstates of S.n, columns |E_1>, |E_2>, |E_3>.
inline CMatrix spin1_eigenstates(double theta) {
  const double c2 = std::cos(theta / 2) * std::cos(theta / 2);
  const double s2 = std::sin(theta / 2) * std::sin(theta / 2);
  const double r = std::sin(theta) / std::sqrt(2.0);
  CMatrix e(3, 3);
  e << c2, -r, s2,
       r, std::cos(theta), -r,
       s2, r, c2;
  return e;
}

/// Spin-1/2 eigenstates, columns |+1/2>, |-1/2>.
inline CMatrix spin_half_eigenstates(double theta) {
  const double a = std::cos(theta / 2);
  const double b = std::sin(theta / 2);
  CMatrix e(2, 2);
  e << a, -b,
       b, a;
  return e;
}

/// Rows n+ and n- of the spin-1/2 transformation matrix.
inline std::array<CVector, 2> spin_half_optimal(double theta) {
  const double a = std::cos(theta / 2);
  const double b = std::sin(theta / 2);
  const double r = 1.0 / std::sqrt(2.0);
  return {vec({r * (a - b), r * (a + b)}), vec({r * (a + b), r * (b - a)})};
}

/// Spin-1/2 p = 1 coefficients chi_ij.
inline CMatrix spin_half_max_prob_chi(double xi1, double xi2, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  CMatrix chi(2, 2);
  chi << 0.5 * (xi1 - xi2) * c, -0.5 * xi1 * (1 - s) - 0.5 * xi2 * (1 + s),
         0.5 * xi1 * (1 + s) + 0.5 * xi2 * (1 - s), -0.5 * (xi1 - xi2) * c;
  return chi;
}

/// Unnormalized spin-1 ancilla states psi~_1..3 for chi = diag(xi), columns.
inline CMatrix spin1_ancilla_states(const std::array<double, 3>& xi, double theta) {
  const double r = std::sqrt(2.0);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  CMatrix p(3, 3);
  p << xi[0] / r, -xi[0] * s / r, xi[0] * c / r,
       0.0, xi[1] * c, xi[1] * s,
       xi[2] / r, xi[2] * s / r, -xi[2] * c / r;
  return p;
}

/// Spin-1 measurement vector (alpha_0, alpha_1, alpha_2).
inline CVector spin1_measurement_vector(const std::array<double, 3>& xi, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double n = std::sqrt(0.5 * xi[1] * xi[1] * (xi[0] * xi[0] + xi[2] * xi[2]) * c * c +
                             xi[0] * xi[0] * xi[2] * xi[2] * s * s);
  const double r = std::sqrt(2.0);
  return vec({xi[1] * xi[2] * c / (r * n), xi[0] * xi[2] * s / n, -xi[0] * xi[1] * c / (r * n)});
}

/// Random complex unit vector.
template <class Rng>
CVector random_unit(Rng& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = Complex(g(rng), g(rng));
  return v.normalized();
}

template <class Rng>
CMatrix random_hermitian(Rng& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  CMatrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  return 0.5 * (a + a.adjoint());
}

/// Largest |a_i - b_i| after removing the relative global phase of b.
inline double phase_aligned_error(const CVector& a, const CVector& b) {
  const Complex ov = b.dot(a);
  const Complex ph = std::abs(ov) > 0 ? ov / std::abs(ov) : Complex(1.0);
  return (a - ph * b).cwiseAbs().maxCoeff();
}

}  // namespace spinmetro::oracle
