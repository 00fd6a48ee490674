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

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "spinmetro/error.hpp"

namespace spinmetro {
namespace {

OptimalBasis random_basis(std::mt19937_64& rng, Eigen::Index m) {
  std::normal_distribution<double> g;
  CMatrix a(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<CMatrix> qr(a);
  return OptimalBasis{qr.householderQ() * CMatrix::Identity(m, m)};
}

TEST(OptimalStates, SpinOneAlongZ) {
  const auto n = optimal_states(spectrum(make_spin_system(1.0), Axis(0.0)));
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_LT((n.plus - oracle::vec({r, 0.0, r})).norm(), 1e-14);
  EXPECT_LT((n.minus - oracle::vec({r, 0.0, -r})).norm(), 1e-14);
}

TEST(OptimalStates, SpinHalfRowsOfTransformationMatrix) {
  for (double theta : {0.0, 0.5, 1.4, 2.6}) {
    const auto n = optimal_states(spectrum(make_spin_system(0.5), Axis(theta)));
    const auto expected = oracle::spin_half_optimal(theta);
    EXPECT_LT((n.plus - expected[0]).norm(), 1e-12) << theta;
    EXPECT_LT((n.minus - expected[1]).norm(), 1e-12) << theta;
  }
}

TEST(OptimalStates, SpinOneFromClosedFormEigenstates) {
  const double theta = std::numbers::pi / 4;
  const CMatrix e = oracle::spin1_eigenstates(theta);
  const CVector plus = (e.col(0) + e.col(2)) / std::sqrt(2.0);
  const CVector minus = (e.col(0) - e.col(2)) / std::sqrt(2.0);
  const auto n = optimal_states(spectrum(make_spin_system(1.0), Axis(theta)));
  EXPECT_NEAR(std::abs(plus.dot(n.plus)), 1.0, 1e-10);
  EXPECT_NEAR(std::abs(minus.dot(n.minus)), 1.0, 1e-10);
}

TEST(OptimalBasis, OrthonormalAndRecoversExtremeEigenstates) {
  for (double sv : {0.5, 1.0, 2.5}) {
    const auto spec = spectrum(make_spin_system(sv), Axis(1.2));
    const OptimalBasis b = optimal_basis(spec);
    const Eigen::Index m = b.dim();
    EXPECT_LT((b.vectors.adjoint() * b.vectors - CMatrix::Identity(m, m)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT(((b.phi(0) + b.phi(m - 1)) / std::sqrt(2.0) - spec.state(0)).norm(), 1e-12);
    EXPECT_LT(((b.phi(0) - b.phi(m - 1)) / std::sqrt(2.0) - spec.state(m - 1)).norm(), 1e-12);
  }
}

TEST(QfiPure, EigenstateHasZeroQfi) {
  const SpinSystem s = make_spin_system(1.5);
  const Axis axis(0.6);
  const auto spec = spectrum(s, axis);
  for (Eigen::Index i = 0; i < spec.dim(); ++i) EXPECT_NEAR(qfi_pure(spec.state(i), hamiltonian(s, axis)), 0.0, 1e-12);
}

TEST(QfiPure, OptimalStatesReachFourSSquared) {
  for (double sv : {0.5, 1.0, 1.5, 2.0}) {
    const SpinSystem s = make_spin_system(sv);
    const Axis axis(0.8);
    const auto n = optimal_states(spectrum(s, axis));
    EXPECT_NEAR(qfi_pure(n.plus, hamiltonian(s, axis)), 4 * sv * sv, 1e-8);
    EXPECT_NEAR(qfi_pure(n.minus, hamiltonian(s, axis)), 4 * sv * sv, 1e-8);
  }
}

TEST(QfiPure, MatchesDerivativeForm) {
  std::mt19937_64 rng(9);
  const double theta = 0.9;
  const CMatrix h = std::sin(theta) * oracle::spin1_sx() + std::cos(theta) * oracle::spin1_sz();
  for (int k = 0; k < 10; ++k) {
    const CVector psi = oracle::random_unit(rng, 3);
    const CVector d = Complex(0.0, -1.0) * (h * psi);
    const double expected = 4.0 * (d.squaredNorm() - std::norm(psi.dot(d)));
    EXPECT_NEAR(qfi_pure(psi, hamiltonian(make_spin_system(1.0), Axis(theta))), expected, 1e-8);
  }
}

TEST(QfiPure, InvariantUnderPhaseEvolutionAndAlpha) {
  std::mt19937_64 rng(10);
  const SpinSystem s = make_spin_system(2.0);
  const Axis axis(1.7);
  const auto spec = spectrum(s, axis);
  const CMatrix h = hamiltonian(s, axis);
  for (int k = 0; k < 10; ++k) {
    const CVector psi = oracle::random_unit(rng, 5);
    const double f = qfi_pure(psi, h);
    EXPECT_NEAR(qfi_pure(std::polar(1.0, 0.3 * k) * psi, h), f, 1e-10);
    EXPECT_NEAR(qfi_pure(evolve(spec, 0.2 * k, psi), h), f, 1e-10);
  }
  for (double alpha : {0.0, 0.4, 2.0, -1.1}) {
    EXPECT_NEAR(qfi_pure(optimal_states(spec, alpha).plus, h), 16.0, 1e-8);
  }
}

TEST(QfiPure, RandomProbesNeverBeatOptimum) {
  std::mt19937_64 rng(12);
  for (double sv : {0.5, 1.0, 2.0}) {
    const SpinSystem s = make_spin_system(sv);
    const Axis axis(0.4);
    const CMatrix h = hamiltonian(s, axis);
    double best = 0.0;
    for (int k = 0; k < 500; ++k) best = std::max(best, qfi_pure(oracle::random_unit(rng, s.dim()), h));
    EXPECT_LT(best, 4 * sv * sv + 1e-8);
    EXPECT_NEAR(qfi_pure(optimal_states(spectrum(s, axis)).plus, h), 4 * sv * sv, 1e-10);
  }
}

TEST(Cfi, AnalyticCosineSquared) {
  // P = (cos^2(s b), sin^2(s b)), dP = (-s sin(2 s b), s sin(2 s b)).
  for (double sv : {0.5, 1.0, 2.0}) {
    const double b = 0.3;
    const double c2 = std::cos(sv * b) * std::cos(sv * b);
    const double d = sv * std::sin(2 * sv * b);
    const std::vector<OutcomeProbability> o = {{c2, -d}, {1 - c2, d}, {0.0, 0.0}};
    EXPECT_NEAR(cfi(o), 4 * sv * sv, 1e-12);
  }
}

TEST(Cfi, UniformInsensitive) {
  const std::vector<OutcomeProbability> o = {{0.25, 0.0}, {0.25, 0.0}, {0.25, 0.0}, {0.25, 0.0}};
  EXPECT_EQ(cfi(o), 0.0);
}

TEST(Cfi, FiniteDifferenceAgreesWithOptimum) {
  const auto spec = spectrum(make_spin_system(1.0), Axis(0.5));
  const OptimalBasis b = optimal_basis(spec);
  const auto fd = probe_measurement_derivatives(spec, 0.3, b.phi(0), b, Derivative::kCentralDifference);
  EXPECT_NEAR(cfi(fd), 4.0, 1e-6);
  const auto an = probe_measurement_derivatives(spec, 0.3, b.phi(0), b);
  EXPECT_NEAR(cfi(an), 4.0, 1e-10);
}

TEST(Cfi, ErrorPaths) {
  const std::vector<OutcomeProbability> unnormalized = {{0.5, 0.0}, {0.4, 0.0}};
  const std::vector<OutcomeProbability> divergent = {{1.0, 0.0}, {0.0, 0.5}};
  try {
    cfi(unnormalized);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotNormalized);
  }
  try {
    cfi(divergent);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDivergentFI);
  }
}

TEST(ProbeMeasurement, OptimalProbeAtZeroAngle) {
  const auto spec = spectrum(make_spin_system(1.5), Axis(0.4));
  const OptimalBasis b = optimal_basis(spec);
  const auto p = probe_measurement_probs(spec, 0.0, b.phi(0), b);
  EXPECT_NEAR(p[0], 1.0, 1e-12);
  for (std::size_t i = 1; i < p.size(); ++i) EXPECT_NEAR(p[i], 0.0, 1e-12);
}

TEST(ProbeMeasurement, SpinOneCosineLaw) {
  const SpinSystem s = make_spin_system(1.0);
  const Axis axis(1.1);
  const OptimalBasis b = optimal_basis(spectrum(s, axis));
  for (double beta : {0.1, 0.7, 1.3}) {
    const auto p = probe_measurement_probs(s, axis, beta, b.phi(0), b);
    EXPECT_NEAR(p[0], std::cos(beta) * std::cos(beta), 1e-12);
    EXPECT_NEAR(p[1], 0.0, 1e-12);
    EXPECT_NEAR(p[2], std::sin(beta) * std::sin(beta), 1e-12);
  }
}

TEST(ProbeMeasurement, InteriorEigenstateIsStationary) {
  const SpinSystem s = make_spin_system(1.0);
  const Axis axis(0.8);
  const auto spec = spectrum(s, axis);
  const OptimalBasis b = optimal_basis(spec);
  for (double beta : {0.0, 0.5, 2.0}) EXPECT_NEAR(probe_measurement_probs(s, axis, beta, spec.state(1), b)[1], 1.0, 1e-12);
}

TEST(FisherProperties, OptimalBasisCfiEqualsQfiOnGrid) {
  for (double sv : {0.5, 1.0, 2.0}) {
    const SpinSystem s = make_spin_system(sv);
    const Axis axis(0.7);
    const auto spec = spectrum(s, axis);
    const OptimalBasis b = optimal_basis(spec);
    const double q = qfi_pure(b.phi(0), hamiltonian(s, axis));
    // stay away from beta = k pi / (2s), where an outcome probability vanishes with zero slope
    for (int k = 1; k < 20; ++k) {
      const double beta = (k + 0.37) * std::numbers::pi / (2 * sv * 21);
      EXPECT_NEAR(cfi(probe_measurement_derivatives(spec, beta, b.phi(0), b)), q, 1e-6) << sv << " " << beta;
    }
  }
}

TEST(FisherProperties, MeasurementBoundForRandomConfigurations) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> th(0.0, std::numbers::pi), be(0.0, 3.0);
  for (int k = 0; k < 100; ++k) {
    const SpinSystem s = make_spin_system(Spin::from_twice(1 + k % 4));
    const Axis axis(th(rng));
    const auto spec = spectrum(s, axis);
    const CVector probe = oracle::random_unit(rng, s.dim());
    const OptimalBasis basis = random_basis(rng, s.dim());
    const FisherReport r = fisher_report(spec, be(rng), probe, basis, 100);
    EXPECT_LE(r.cfi, r.qfi + 1e-8);
    EXPECT_NEAR(r.crb, 1.0 / (100 * r.cfi), 1e-12 / r.cfi);
  }
}

}  // namespace
}  // namespace spinmetro
