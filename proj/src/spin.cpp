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

#include "spinmetro/spin.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spinmetro/error.hpp"

namespace spinmetro {

Spin Spin::from_twice(int twice_s) {
  if (twice_s < 1) throw Error(ErrorCode::kInvalidSpin, "2s must be a positive integer, got " + std::to_string(twice_s));
  return Spin(twice_s);
}

Spin Spin::from_double(double s) {
  const double twice = 2.0 * s;
  if (!std::isfinite(twice) || twice < 0.5 || std::abs(twice - std::round(twice)) > 1e-12 || twice > 1e6) {
    throw Error(ErrorCode::kInvalidSpin, "s = " + std::to_string(s) + " is not a positive half-integer");
  }
  return Spin(static_cast<int>(std::lround(twice)));
}

Axis::Axis(double theta) : theta_(theta) {
  if (!std::isfinite(theta) || theta < 0.0 || theta > std::numbers::pi) {
    throw Error(ErrorCode::kInvalidAxis, "theta must lie in [0, pi], got " + std::to_string(theta));
  }
}

Axis Axis::from_angles(double theta, double phi) {
  if (phi != 0.0) {
    throw Error(ErrorCode::kInvalidAxis, "only axes in the x-z plane are supported (phi = 0)");
  }
  return Axis(theta);
}

Eigen::Vector3d Axis::direction() const { return {std::sin(theta_), 0.0, std::cos(theta_)}; }

SpinSystem make_spin_system(Spin spin) {
  const Eigen::Index m = spin.dim();
  const double s = spin.value();
  CMatrix raise = CMatrix::Zero(m, m);
  CMatrix sz = CMatrix::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double mk = s - static_cast<double>(k);
    sz(k, k) = mk;
    // <mk + 1 | S+ | mk>
    if (k > 0) raise(k - 1, k) = std::sqrt(s * (s + 1.0) - mk * (mk + 1.0));
  }
  const CMatrix lower = raise.adjoint();
  const Complex i(0.0, 1.0);
  return SpinSystem{spin, 0.5 * (raise + lower), -0.5 * i * (raise - lower), sz};
}

SpinSystem make_spin_system(double s) { return make_spin_system(Spin::from_double(s)); }

CMatrix hamiltonian(const SpinSystem& sys, const Axis& axis) {
  return std::sin(axis.theta()) * sys.sx + std::cos(axis.theta()) * sys.sz;
}

HamiltonianSpectrum spectrum(const SpinSystem& sys, const Axis& axis) {
  linalg::HermitianEig eig = linalg::hermitian_eig(hamiltonian(sys, axis));
  if (eig.degenerate) {
    throw Error(ErrorCode::kDegenerateSpectrum, "S.n has a degenerate spectrum; the axis is not a unit vector?");
  }
  return HamiltonianSpectrum{std::move(eig.values), std::move(eig.vectors)};
}

CMatrix evolution_operator(const HamiltonianSpectrum& spec, double beta) {
  CVector phases(spec.dim());
  for (Eigen::Index i = 0; i < spec.dim(); ++i) phases[i] = std::polar(1.0, -beta * spec.energies[i]);
  return spec.states * phases.asDiagonal() * spec.states.adjoint();
}

CVector evolve(const HamiltonianSpectrum& spec, double beta, const CVector& state) {
  if (state.size() != spec.dim()) throw Error(ErrorCode::kDimensionMismatch, "evolve: state dimension mismatch");
  CVector amps = spec.states.adjoint() * state;
  for (Eigen::Index i = 0; i < spec.dim(); ++i) amps[i] *= std::polar(1.0, -beta * spec.energies[i]);
  return spec.states * amps;
}

CVector evolve(const SpinSystem& sys, const Axis& axis, double beta, const CVector& state) {
  return evolve(spectrum(sys, axis), beta, state);
}

}  // namespace spinmetro
