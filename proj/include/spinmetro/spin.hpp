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

#include "spinmetro/linalg.hpp"

namespace spinmetro {

/// Spin quantum number stored as the integer 2s, so half-integers are exact.
class Spin {
 public:
  /// Throws kInvalidSpin unless 2s is a positive integer.
  static Spin from_double(double s);
  static Spin from_twice(int twice_s);

  int twice() const noexcept { return twice_s_; }
  double value() const noexcept { return 0.5 * twice_s_; }
  /// Hilbert-space dimension 2s + 1.
  Eigen::Index dim() const noexcept { return twice_s_ + 1; }
  /// Maximal QFI (E_1 - E_m)^2 = 4 s^2.
  double max_qfi() const noexcept { return static_cast<double>(twice_s_) * twice_s_; }

  friend bool operator==(Spin, Spin) = default;

 private:
  explicit Spin(int twice_s) : twice_s_(twice_s) {}
  int twice_s_;
};

/// Rotation axis n = (sin theta, 0, cos theta).
class Axis {
 public:
  /// Throws kInvalidAxis unless theta lies in [0, pi].
  explicit Axis(double theta);
  /// Azimuthal angles other than zero take the axis out of the x-z plane and
  /// are rejected (kInvalidAxis).
  static Axis from_angles(double theta, double phi);

  double theta() const noexcept { return theta_; }
  Eigen::Vector3d direction() const;

 private:
  double theta_;
};

/// S_x, S_y, S_z for a single spin-s in the |s, s>, |s, s-1>, ..., |s, -s> basis (hbar = 1).
struct SpinSystem {
  Spin spin;
  CMatrix sx;
  CMatrix sy;
  CMatrix sz;

  Eigen::Index dim() const noexcept { return spin.dim(); }
};

struct HamiltonianSpectrum {
  RVector energies;   // E_1 > ... > E_m
  CMatrix states;     // column i is |E_{i+1}>

  Eigen::Index dim() const noexcept { return energies.size(); }
  CVector state(Eigen::Index i) const { return states.col(i); }
};

SpinSystem make_spin_system(Spin spin);
SpinSystem make_spin_system(double s);

/// H = S_x sin(theta) + S_z cos(theta).
CMatrix hamiltonian(const SpinSystem& sys, const Axis& axis);

/// Throws kDegenerateSpectrum if the eigensolver reports a degeneracy.
HamiltonianSpectrum spectrum(const SpinSystem& sys, const Axis& axis);

/// exp(-i beta H) built from the spectral decomposition.
CMatrix evolution_operator(const HamiltonianSpectrum& spec, double beta);

CVector evolve(const HamiltonianSpectrum& spec, double beta, const CVector& state);
CVector evolve(const SpinSystem& sys, const Axis& axis, double beta, const CVector& state);

}  // namespace spinmetro
