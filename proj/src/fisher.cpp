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

#include "spinmetro/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spinmetro/error.hpp"

namespace spinmetro {

OptimalStates optimal_states(const HamiltonianSpectrum& spec, double alpha) {
  const Eigen::Index m = spec.dim();
  const CVector top = spec.state(0);
  const CVector bottom = std::polar(1.0, alpha) * spec.state(m - 1);
  const double r = 1.0 / std::sqrt(2.0);
  return {r * (top + bottom), r * (top - bottom)};
}

OptimalBasis optimal_basis(const HamiltonianSpectrum& spec, double alpha) {
  const Eigen::Index m = spec.dim();
  OptimalStates n = optimal_states(spec, alpha);
  CMatrix vectors = spec.states;
  vectors.col(0) = n.plus;
  vectors.col(m - 1) = n.minus;
  return OptimalBasis{std::move(vectors)};
}

double qfi_pure(const CVector& state, const CMatrix& h) {
  const CVector hpsi = h * state;
  const double mean = state.dot(hpsi).real();
  const double second = hpsi.squaredNorm();
  return std::max(0.0, 4.0 * (second - mean * mean));
}

double cfi(std::span<const OutcomeProbability> outcomes) {
  double total = 0.0;
  for (const auto& o : outcomes) {
    if (!(o.p >= -kZeroProbability)) throw Error(ErrorCode::kNotNormalized, "negative probability");
    total += o.p;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw Error(ErrorCode::kNotNormalized, "probabilities sum to " + std::to_string(total));
  }
  double f = 0.0;
  for (const auto& o : outcomes) {
    if (o.p <= kZeroProbability) {
      if (std::abs(o.dp) > kZeroDerivative) {
        throw Error(ErrorCode::kDivergentFI, "outcome with P = " + std::to_string(o.p) +
                                                 " has dP/dbeta = " + std::to_string(o.dp));
      }
      continue;
    }
    f += o.dp * o.dp / o.p;
  }
  return f;
}

std::vector<double> probe_measurement_probs(const HamiltonianSpectrum& spec, double beta, const CVector& probe,
                                            const OptimalBasis& basis) {
  const CVector amps = basis.vectors.adjoint() * evolve(spec, beta, probe);
  std::vector<double> out(static_cast<std::size_t>(amps.size()));
  for (Eigen::Index i = 0; i < amps.size(); ++i) out[static_cast<std::size_t>(i)] = std::norm(amps[i]);
  return out;
}

std::vector<double> probe_measurement_probs(const SpinSystem& sys, const Axis& axis, double beta,
                                            const CVector& probe, const OptimalBasis& basis) {
  return probe_measurement_probs(spectrum(sys, axis), beta, probe, basis);
}

std::vector<OutcomeProbability> probe_measurement_derivatives(const HamiltonianSpectrum& spec, double beta,
                                                              const CVector& probe, const OptimalBasis& basis,
                                                              Derivative method) {
  const auto m = static_cast<std::size_t>(basis.dim());
  std::vector<OutcomeProbability> out(m);
  if (method == Derivative::kCentralDifference) {
    const double h = kFiniteDifferenceStep;
    const auto p = probe_measurement_probs(spec, beta, probe, basis);
    const auto hi = probe_measurement_probs(spec, beta + h, probe, basis);
    const auto lo = probe_measurement_probs(spec, beta - h, probe, basis);
    for (std::size_t i = 0; i < m; ++i) out[i] = {p[i], (hi[i] - lo[i]) / (2.0 * h)};
    return out;
  }
  const CVector evolved = evolve(spec, beta, probe);
  const CMatrix h = spec.states * spec.energies.cast<Complex>().asDiagonal() * spec.states.adjoint();
  const CVector slope = Complex(0.0, -1.0) * (h * evolved);
  const CVector a = basis.vectors.adjoint() * evolved;
  const CVector da = basis.vectors.adjoint() * slope;
  for (std::size_t i = 0; i < m; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    out[i] = {std::norm(a[k]), 2.0 * (std::conj(a[k]) * da[k]).real()};
  }
  return out;
}

double cramer_rao_bound(long long shots, double fisher) {
  if (shots <= 0 || fisher <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (static_cast<double>(shots) * fisher);
}

FisherReport fisher_report(const HamiltonianSpectrum& spec, double beta, const CVector& probe,
                           const OptimalBasis& basis, long long shots) {
  const auto outcomes = probe_measurement_derivatives(spec, beta, probe, basis);
  const CMatrix h = spec.states * spec.energies.cast<Complex>().asDiagonal() * spec.states.adjoint();
  FisherReport r;
  r.cfi = cfi(outcomes);
  r.qfi = qfi_pure(probe, h);
  r.crb = cramer_rao_bound(shots, r.cfi);
  return r;
}

}  // namespace spinmetro
