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

#include <span>
#include <utility>
#include <vector>

#include "spinmetro/spin.hpp"

namespace spinmetro {

/// Optimal probe basis: column 0 is n+, columns 1..m-2 the interior
/// eigenstates |E_2>..|E_{m-1}>, column m-1 is n-.
struct OptimalBasis {
  CMatrix vectors;

  Eigen::Index dim() const noexcept { return vectors.cols(); }
  CVector phi(Eigen::Index i) const { return vectors.col(i); }
};

struct OptimalStates {
  CVector plus;
  CVector minus;
};

/// n+- = (|E_1> +- e^{i alpha} |E_m>) / sqrt(2).
OptimalStates optimal_states(const HamiltonianSpectrum& spec, double alpha = 0.0);
OptimalBasis optimal_basis(const HamiltonianSpectrum& spec, double alpha = 0.0);

/// Pure-state QFI 4 (<H^2> - <H>^2), clamped at zero.
double qfi_pure(const CVector& state, const CMatrix& h);

struct OutcomeProbability {
  double p = 0.0;
  double dp = 0.0;  // dP/dbeta
};

inline constexpr double kZeroProbability = 1e-12;
inline constexpr double kZeroDerivative = 1e-9;

/// Classical Fisher information sum_i dP_i^2 / P_i.
/// Outcomes with P_i <= 1e-12 contribute nothing when |dP_i| <= 1e-9; a
/// vanishing P_i with a finite slope throws kDivergentFI. Throws
/// kNotNormalized if the P_i do not sum to one within 1e-10.
double cfi(std::span<const OutcomeProbability> outcomes);

/// P_i(beta) = |<phi_i| U(beta) |probe>|^2.
std::vector<double> probe_measurement_probs(const HamiltonianSpectrum& spec, double beta, const CVector& probe,
                                            const OptimalBasis& basis);
std::vector<double> probe_measurement_probs(const SpinSystem& sys, const Axis& axis, double beta,
                                            const CVector& probe, const OptimalBasis& basis);

enum class Derivative { kAnalytic, kCentralDifference };

inline constexpr double kFiniteDifferenceStep = 1e-6;

/// P_i(beta) together with dP_i/dbeta, analytic (dU/dbeta = -i H U) or by
/// central difference with step kFiniteDifferenceStep.
std::vector<OutcomeProbability> probe_measurement_derivatives(const HamiltonianSpectrum& spec, double beta,
                                                              const CVector& probe, const OptimalBasis& basis,
                                                              Derivative method = Derivative::kAnalytic);

struct FisherReport {
  double cfi = 0.0;
  double qfi = 0.0;
  double crb = 0.0;  // 1 / (N F) with F the classical FI
};

FisherReport fisher_report(const HamiltonianSpectrum& spec, double beta, const CVector& probe,
                           const OptimalBasis& basis, long long shots);

/// 1 / (N F)
double cramer_rao_bound(long long shots, double fisher);

}  // namespace spinmetro
