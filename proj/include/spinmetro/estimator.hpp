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

#include <cstdint>
#include <span>
#include <vector>

#include "spinmetro/protocol.hpp"

namespace spinmetro {

/// beta interval on which the optimal-probe likelihood (a function of
/// cos^2(s beta)) is injective: (0, pi / (2s)).
struct Domain {
  double lo = 0.0;
  double hi = 0.0;
};

Domain fundamental_domain(Spin spin);

/// Outcome counts in the optimal basis for shots prepared in `probe`.
struct OutcomeCounts {
  CVector probe;
  std::vector<long long> counts;
};

/// Multinomial log-likelihood over one or more probe preparations.
class LikelihoodModel {
 public:
  LikelihoodModel(const HamiltonianSpectrum& spec, const OptimalBasis& basis, std::vector<OutcomeCounts> groups);

  /// sum_i counts_i log P_i(beta). Zero-count outcomes contribute nothing;
  /// a positive count on a zero-probability outcome gives -infinity.
  double log_likelihood(double beta) const;

 private:
  RVector energies_;
  CMatrix overlap_;                  // <phi_i|E_k>
  std::vector<CVector> amplitudes_;  // <E_k|probe> per group
  std::vector<std::vector<long long>> counts_;
};

double likelihood(std::span<const long long> counts, const SpinSystem& sys, const Axis& axis, const CVector& probe,
                  const OptimalBasis& basis, double beta);

inline constexpr int kMleGridPoints = 1024;
inline constexpr double kMleTolerance = 1e-9;

/// Global maximizer over `domain`: a uniform grid scan (endpoints included)
/// followed by golden-section refinement of the best cell down to `tol`.
/// Throws kFlatLikelihood when the finite grid values vary by less than 1e-12.
double mle(const LikelihoodModel& model, Domain domain, int grid_points = kMleGridPoints,
           double tol = kMleTolerance);

struct EstimationConfig {
  double beta_true = 0.0;
  long long shots = 0;  // kept shots per trial
  int trials = 0;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Throws kOutOfDomain unless beta_true sits inside the fundamental domain
/// with a 5% margin on each side, shots >= 1 and trials >= 2.
void validate(const EstimationConfig& cfg, Spin spin);

struct ProtocolSetup {
  BipartiteState state;
  SpinSystem sys;
  Axis axis;
  Target target = Target::kMinus;
  bool prefer_combined = true;
};

struct EstimationResult {
  std::vector<double> beta_hat;
  std::vector<long long> attempts;  // ancilla measurements per trial
  double mean = 0.0;
  double empirical_variance = 0.0;  // unbiased sample variance
  double mse = 0.0;                 // about beta_true
  double fisher = 0.0;              // per kept shot, 4 s^2
  long long shots = 0;
  double crb = 0.0;                 // 1 / (N F)
  long long total_attempts = 0;
  double kept_fraction = 0.0;

  /// N F var(beta_hat); one at saturation.
  double normalized_variance() const { return empirical_variance / crb; }
};

/// Per trial: draw shots until `shots` are kept, measure each kept probe in
/// the optimal basis, and estimate beta by maximum likelihood. Trial t uses
/// the stream family StreamRng::derive(seed, t); shot j within it is stream j,
/// so results do not depend on `threads`.
EstimationResult run_estimation(const EstimationConfig& cfg, const ProtocolSetup& setup);

}  // namespace spinmetro
