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

#include "spinmetro/estimator.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "spinmetro/error.hpp"

namespace spinmetro {
namespace {

constexpr double kPi = std::numbers::pi;

struct Spin1Model {
  SpinSystem sys = make_spin_system(1.0);
  Axis axis{0.7};
  HamiltonianSpectrum spec = spectrum(sys, axis);
  OptimalBasis basis = optimal_basis(spec);

  LikelihoodModel model(long long n1, long long n3) const {
    return LikelihoodModel(spec, basis, {OutcomeCounts{basis.phi(0), {n1, 0, n3}}});
  }
};

TEST(Likelihood, BinomialMaximum) {
  const Spin1Model m;
  const double beta = mle(m.model(73, 27), fundamental_domain(m.sys.spin));
  EXPECT_NEAR(beta, std::acos(std::sqrt(0.73)), 1e-6);
}

TEST(Likelihood, SymmetricCounts) {
  const Spin1Model m;
  EXPECT_NEAR(mle(m.model(50, 50), fundamental_domain(m.sys.spin)), kPi / 4, 1e-6);
}

TEST(Likelihood, AllCountsOnFirstOutcomeSitsAtBoundary) {
  const Spin1Model m;
  EXPECT_NEAR(mle(m.model(100, 0), fundamental_domain(m.sys.spin)), 0.0, 1e-6);
}

TEST(Likelihood, ExactCountsRecoverBeta) {
  for (double sv : {0.5, 1.0, 2.0}) {
    const SpinSystem sys = make_spin_system(sv);
    const Axis axis(1.1);
    const auto spec = spectrum(sys, axis);
    const OptimalBasis basis = optimal_basis(spec);
    const Domain d = fundamental_domain(sys.spin);
    const double beta0 = 0.37 * d.hi;
    const auto probs = probe_measurement_probs(spec, beta0, basis.phi(0), basis);
    std::vector<long long> counts;
    for (double p : probs) counts.push_back(std::llround(p * 1e10));
    const LikelihoodModel model(spec, basis, {OutcomeCounts{basis.phi(0), counts}});
    EXPECT_NEAR(mle(model, d), beta0, 1e-6) << "s=" << sv;
  }
}

TEST(Likelihood, MatchesMultinomialSum) {
  const Spin1Model m;
  const double beta = 0.3;
  const std::vector<long long> counts = {12, 0, 5};
  const double expected = 12 * std::log(std::cos(beta) * std::cos(beta)) + 5 * std::log(std::sin(beta) * std::sin(beta));
  EXPECT_NEAR(likelihood(counts, m.sys, m.axis, m.basis.phi(0), m.basis, beta), expected, 1e-10);
}

TEST(Likelihood, ImpossibleOutcomeIsMinusInfinity) {
  const Spin1Model m;
  const std::vector<long long> counts = {1, 1, 0};  // phi_2 is unreachable from n+
  EXPECT_EQ(likelihood(counts, m.sys, m.axis, m.basis.phi(0), m.basis, 0.3), -INFINITY);
}

TEST(Likelihood, FlatLikelihoodThrows) {
  const Spin1Model m;
  try {
    mle(m.model(0, 0), fundamental_domain(m.sys.spin));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFlatLikelihood);
  }
}

TEST(Config, DomainMargin) {
  const Spin s = Spin::from_double(1.0);
  EXPECT_NEAR(fundamental_domain(s).hi, kPi / 2, 1e-15);
  EXPECT_NO_THROW(validate({0.4, 100, 10, 1}, s));
  EXPECT_THROW(validate({0.05, 100, 10, 1}, s), Error);
  EXPECT_THROW(validate({1.5, 100, 10, 1}, s), Error);
  EXPECT_THROW(validate({0.4, 0, 10, 1}, s), Error);
  EXPECT_THROW(validate({0.4, 100, 1, 1}, s), Error);
}

ProtocolSetup qutrit_setup() {
  return {maximally_entangled(3), make_spin_system(1.0), Axis(0.9)};
}

TEST(RunEstimation, KeptFractionAndSaturation) {
  const EstimationResult r = run_estimation({0.4, 2000, 200, 11}, qutrit_setup());
  EXPECT_NEAR(r.kept_fraction, 2.0 / 3.0, 0.02);
  EXPECT_DOUBLE_EQ(r.fisher, 4.0);
  EXPECT_DOUBLE_EQ(r.crb, 1.0 / (2000 * 4.0));
  EXPECT_GT(r.normalized_variance(), 0.7);
  EXPECT_LT(r.normalized_variance(), 1.4);
  EXPECT_LT(std::abs(r.mean - 0.4), 3 * std::sqrt(r.empirical_variance / 200));
  EXPECT_GE(r.empirical_variance, r.crb * (1 - 3 / std::sqrt(200.0)));
}

TEST(RunEstimation, VarianceNotBelowBoundAcrossRuns) {
  const ProtocolSetup setup{maximally_entangled(3), make_spin_system(1.0), Axis(kPi / 3)};
  int low = 0;
  for (std::uint64_t run = 0; run < 20; ++run) {
    const EstimationResult r = run_estimation({0.4, 10000, 200, 1000 + run}, setup);
    if (r.normalized_variance() < 0.85) ++low;
  }
  EXPECT_LE(low, 1);
}

TEST(RunEstimation, BellStateKeepsEveryShot) {
  const ProtocolSetup setup{maximally_entangled(2), make_spin_system(0.5), Axis(0.4)};
  const EstimationResult r = run_estimation({1.0, 500, 20, 3}, setup);
  EXPECT_NEAR(r.kept_fraction, 1.0, 1e-12);
  EXPECT_EQ(r.total_attempts, 500 * 20);
}

TEST(RunEstimation, DoublingShotsHalvesVariance) {
  const EstimationResult a = run_estimation({0.5, 500, 400, 21}, qutrit_setup());
  const EstimationResult b = run_estimation({0.5, 1000, 400, 22}, qutrit_setup());
  EXPECT_NEAR(a.empirical_variance / b.empirical_variance, 2.0, 0.5);
}

TEST(RunEstimation, ThreadCountDoesNotChangeResults) {
  const EstimationResult a = run_estimation({0.4, 300, 16, 5, 1}, qutrit_setup());
  const EstimationResult b = run_estimation({0.4, 300, 16, 5, 4}, qutrit_setup());
  EXPECT_EQ(a.beta_hat, b.beta_hat);
  EXPECT_EQ(a.attempts, b.attempts);
}

TEST(RunEstimation, GeneralStateUsesPostselectedProbes) {
  const SpinSystem sys = make_spin_system(1.0);
  const double r = 1.0 / std::sqrt(3.0);
  const ProtocolSetup setup{diagonal_state(std::array{r, r, r}), sys, Axis(1.0)};
  const EstimationResult res = run_estimation({0.6, 1000, 50, 8}, setup);
  EXPECT_NEAR(res.kept_fraction, 2.0 / 3.0, 0.02);
  EXPECT_LT(std::abs(res.mean - 0.6), 4 * std::sqrt(res.empirical_variance / 50));
}

}  // namespace
}  // namespace spinmetro
