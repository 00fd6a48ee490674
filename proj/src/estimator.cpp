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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "spinmetro/error.hpp"

namespace spinmetro {

Domain fundamental_domain(Spin spin) { return {0.0, std::numbers::pi / (2.0 * spin.value())}; }

LikelihoodModel::LikelihoodModel(const HamiltonianSpectrum& spec, const OptimalBasis& basis,
                                 std::vector<OutcomeCounts> groups)
    : energies_(spec.energies), overlap_(basis.vectors.adjoint() * spec.states) {
  for (auto& g : groups) {
    if (g.probe.size() != spec.dim() || static_cast<Eigen::Index>(g.counts.size()) != basis.dim()) {
      throw Error(ErrorCode::kDimensionMismatch, "likelihood: counts or probe have the wrong dimension");
    }
    for (long long c : g.counts) {
      if (c < 0) throw Error(ErrorCode::kOutOfDomain, "negative outcome count");
    }
    amplitudes_.push_back(spec.states.adjoint() * g.probe);
    counts_.push_back(std::move(g.counts));
  }
}

namespace {

// Squared amplitudes at this level are rounding residue of exact zeros.
constexpr double kRoundoffProbability = 1e-20;

}  // namespace

double LikelihoodModel::log_likelihood(double beta) const {
  const Eigen::Index m = energies_.size();
  CVector phases(m);
  for (Eigen::Index k = 0; k < m; ++k) phases[k] = std::polar(1.0, -beta * energies_[k]);
  double ll = 0.0;
  for (std::size_t g = 0; g < counts_.size(); ++g) {
    const CVector amps = overlap_ * phases.cwiseProduct(amplitudes_[g]);
    for (Eigen::Index i = 0; i < m; ++i) {
      const long long n = counts_[g][static_cast<std::size_t>(i)];
      if (n == 0) continue;
      const double p = std::norm(amps[i]);
      if (p <= kRoundoffProbability) return -std::numeric_limits<double>::infinity();
      ll += static_cast<double>(n) * std::log(p);
    }
  }
  return ll;
}

double likelihood(std::span<const long long> counts, const SpinSystem& sys, const Axis& axis, const CVector& probe,
                  const OptimalBasis& basis, double beta) {
  std::vector<OutcomeCounts> groups{{probe, {counts.begin(), counts.end()}}};
  return LikelihoodModel(spectrum(sys, axis), basis, std::move(groups)).log_likelihood(beta);
}

double mle(const LikelihoodModel& model, Domain domain, int grid_points, double tol) {
  if (grid_points < 3 || !(domain.hi > domain.lo)) {
    throw Error(ErrorCode::kOutOfDomain, "mle needs at least 3 grid points on a non-empty domain");
  }
  const double step = (domain.hi - domain.lo) / (grid_points - 1);
  std::vector<double> values(static_cast<std::size_t>(grid_points));
  double lo_val = std::numeric_limits<double>::infinity();
  double hi_val = -std::numeric_limits<double>::infinity();
  std::size_t best = 0;
  for (int k = 0; k < grid_points; ++k) {
    const double v = model.log_likelihood(domain.lo + k * step);
    values[static_cast<std::size_t>(k)] = v;
    if (v > values[best]) best = static_cast<std::size_t>(k);
    if (std::isfinite(v)) {
      lo_val = std::min(lo_val, v);
      hi_val = std::max(hi_val, v);
    }
  }
  if (!std::isfinite(hi_val) || hi_val - lo_val < 1e-12) {
    throw Error(ErrorCode::kFlatLikelihood, "log-likelihood is flat over the domain");
  }

  const auto kbest = static_cast<int>(best);
  double a = domain.lo + std::max(0, kbest - 1) * step;
  double b = domain.lo + std::min(grid_points - 1, kbest + 1) * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = model.log_likelihood(x1);
  double f2 = model.log_likelihood(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = model.log_likelihood(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = model.log_likelihood(x1);
    }
  }
  double x = 0.5 * (a + b);
  // The golden-section bracket is open; a maximum sitting on a grid endpoint
  // (e.g. every count on phi_1) must be returned as the endpoint itself.
  const double fx = model.log_likelihood(x);
  const double grid_best = domain.lo + kbest * step;
  if (values[best] > fx) x = grid_best;
  return x;
}

void validate(const EstimationConfig& cfg, Spin spin) {
  const Domain d = fundamental_domain(spin);
  const double margin = 0.05 * d.hi;
  if (!(cfg.beta_true > d.lo + margin && cfg.beta_true < d.hi - margin)) {
    throw Error(ErrorCode::kOutOfDomain, "beta_true = " + std::to_string(cfg.beta_true) +
                                             " must lie in (" + std::to_string(d.lo + margin) + ", " +
                                             std::to_string(d.hi - margin) + ")");
  }
  if (cfg.shots < 1) throw Error(ErrorCode::kOutOfDomain, "shots must be >= 1");
  if (cfg.trials < 2) throw Error(ErrorCode::kOutOfDomain, "trials must be >= 2");
  if (cfg.threads < 1) throw Error(ErrorCode::kOutOfDomain, "threads must be >= 1");
}

namespace {

struct TrialResult {
  double beta_hat = 0.0;
  long long attempts = 0;
};

class TrialRunner {
 public:
  TrialRunner(const EstimationConfig& cfg, const ProtocolSetup& setup)
      : cfg_(cfg),
        sampler_(setup.state, setup.sys, setup.axis, cfg.beta_true, setup.target, setup.prefer_combined),
        spec_(spectrum(setup.sys, setup.axis)),
        basis_(optimal_basis(spec_)),
        domain_(fundamental_domain(setup.sys.spin)) {
    if (sampler_.keep_probability() < 1e-12) {
      throw Error(ErrorCode::kZeroProjection, "the protocol never keeps a shot");
    }
    const Eigen::Index m = basis_.dim();
    const std::size_t outcomes = sampler_.outcome_probabilities().size();
    probe_cumulative_.resize(outcomes);
    for (std::size_t k = 0; k < outcomes; ++k) {
      if (!sampler_.branch_of(static_cast<Eigen::Index>(k))) continue;
      const CVector amps = basis_.vectors.adjoint() * sampler_.post_state_of(static_cast<Eigen::Index>(k));
      double acc = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        acc += std::norm(amps[i]);
        probe_cumulative_[k].push_back(acc);
      }
      for (double& c : probe_cumulative_[k]) c /= acc;
      probe_cumulative_[k].back() = 1.0;
    }
  }

  TrialResult run(int trial) const {
    const Eigen::Index m = basis_.dim();
    // counts[0] for n+ preparations, counts[1] for n-.
    std::vector<long long> counts[2] = {std::vector<long long>(static_cast<std::size_t>(m), 0),
                                        std::vector<long long>(static_cast<std::size_t>(m), 0)};
    const std::uint64_t family = StreamRng::derive(cfg_.seed, static_cast<std::uint64_t>(trial));
    long long kept = 0;
    std::uint64_t shot = 0;
    while (kept < cfg_.shots) {
      StreamRng rng(family, shot++);
      const Eigen::Index outcome = sampler_.outcome_for(rng.uniform());
      const auto branch = sampler_.branch_of(outcome);
      if (!branch) continue;
      const auto& cum = probe_cumulative_[static_cast<std::size_t>(outcome)];
      const auto it = std::upper_bound(cum.begin(), cum.end(), rng.uniform());
      const auto i = std::min<std::ptrdiff_t>(it - cum.begin(), m - 1);
      ++counts[*branch == Branch::kPlus ? 0 : 1][static_cast<std::size_t>(i)];
      ++kept;
    }
    std::vector<OutcomeCounts> groups;
    for (int b = 0; b < 2; ++b) {
      const bool any = std::any_of(counts[b].begin(), counts[b].end(), [](long long c) { return c > 0; });
      if (any) groups.push_back({basis_.phi(b == 0 ? 0 : m - 1), counts[b]});
    }
    const LikelihoodModel model(spec_, basis_, std::move(groups));
    return {mle(model, domain_), static_cast<long long>(shot)};
  }

 private:
  EstimationConfig cfg_;
  ShotSampler sampler_;
  HamiltonianSpectrum spec_;
  OptimalBasis basis_;
  Domain domain_;
  std::vector<std::vector<double>> probe_cumulative_;
};

}  // namespace

EstimationResult run_estimation(const EstimationConfig& cfg, const ProtocolSetup& setup) {
  validate(cfg, setup.sys.spin);
  const TrialRunner runner(cfg, setup);

  std::vector<TrialResult> trials(static_cast<std::size_t>(cfg.trials));
  const int workers = std::min(cfg.threads, cfg.trials);
  if (workers <= 1) {
    for (int t = 0; t < cfg.trials; ++t) trials[static_cast<std::size_t>(t)] = runner.run(t);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int t = w; t < cfg.trials; t += workers) trials[static_cast<std::size_t>(t)] = runner.run(t);
      });
    }
  }

  EstimationResult r;
  r.shots = cfg.shots;
  r.fisher = setup.sys.spin.max_qfi();
  r.crb = cramer_rao_bound(cfg.shots, r.fisher);
  double sum = 0.0;
  for (const auto& t : trials) {
    r.beta_hat.push_back(t.beta_hat);
    r.attempts.push_back(t.attempts);
    r.total_attempts += t.attempts;
    sum += t.beta_hat;
  }
  const double n = static_cast<double>(cfg.trials);
  r.mean = sum / n;
  double ss = 0.0;
  double se = 0.0;
  for (double b : r.beta_hat) {
    ss += (b - r.mean) * (b - r.mean);
    se += (b - cfg.beta_true) * (b - cfg.beta_true);
  }
  r.empirical_variance = ss / (n - 1.0);
  r.mse = se / n;
  r.kept_fraction = static_cast<double>(cfg.shots) * n / static_cast<double>(r.total_attempts);
  return r;
}

}  // namespace spinmetro
