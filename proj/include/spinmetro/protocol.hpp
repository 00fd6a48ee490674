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

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "spinmetro/entangle.hpp"
#include "spinmetro/random.hpp"

namespace spinmetro {

/// Which optimal probe state a postselected run leaves behind.
enum class Branch { kPlus, kMinus };

/// Collapse target of the non-orthogonal protocol. kMinus is the default;
/// kPlus swaps the roles of indices 1 and m.
enum class Target { kMinus, kPlus };

enum class ProtocolPath { kOrthogonal, kNonOrthogonal };

/// Which branches a protocol can end in.
enum class BranchSet { kNone, kPlus, kMinus, kBoth };

std::string_view to_string(Branch b);
std::string_view to_string(ProtocolPath p);
std::string_view to_string(BranchSet b);

/// Gram defect below which the ancilla states count as orthonormal.
inline constexpr double kOrthogonalGramTol = 1e-8;
/// ||P_S psi_m|| below this means no measurement vector exists.
inline constexpr double kZeroProjectionTol = 1e-10;
/// Overlap below which <psi_1|psi_i> counts as zero for the combined protocol.
inline constexpr double kCombinedOverlapTol = 1e-10;

struct MeasurementVector {
  CVector phi;
  CMatrix completed_basis;  // column 0 is phi
};

/// Projective measurement on the ancilla: columns of `basis` are the
/// outcomes, `success[k]` the branch kept for outcome k (empty = discard).
struct AncillaMeasurement {
  CMatrix basis;
  std::vector<std::optional<Branch>> success;
};

struct BranchResult {
  Branch branch = Branch::kMinus;
  Eigen::Index ancilla_outcome = 0;
  double probability = 0.0;
  CVector post_state;   // normalized probe state after a kept outcome
  double fidelity = 0.0;  // |<post|U(beta)|n+->|^2
  double qfi = 0.0;       // QFI of U(beta)^dagger post with respect to H
};

/// Evaluation of one measurement scheme: brute-force probabilities from the
/// joint state plus the closed-form prediction.
struct ProtocolOutcome {
  AncillaMeasurement measurement;
  double p_closed = 0.0;
  double p_bruteforce = 0.0;
  std::vector<BranchResult> branches;

  BranchSet branch_set() const;
  /// Smallest post-state fidelity over the kept branches (1 if none).
  double min_fidelity() const;
};

struct ProtocolReport : ProtocolOutcome {
  ProtocolPath path = ProtocolPath::kOrthogonal;
  BranchSet branch = BranchSet::kNone;
  double qfi_achieved = 0.0;
  /// Two-outcome variant, present when psi_1 (psi_m for Target::kPlus) is
  /// orthogonal to every other present ancilla state.
  std::optional<ProtocolOutcome> combined;

  /// Post-state of the first kept branch.
  const CVector& post_state() const;
};

/// Brute-force measurement of the ancilla on (U (x) I)|Psi>, built from the
/// full m^2-dimensional joint vector. Entry k of the result is the
/// unnormalized probe state for outcome k; its squared norm is the outcome
/// probability.
std::vector<CVector> simulate_ancilla_measurement(const BipartiteState& psi, const CMatrix& probe_unitary,
                                                  const CMatrix& ancilla_basis);

/// Orthogonal-ancilla protocol: measure B in the present psi_i (completed to
/// a basis) and keep outcomes psi_1 and psi_m. p_closed = c_1^2 + c_m^2.
/// Throws kNonOrthogonalAncilla if the Gram matrix of the present psi_i
/// differs from the identity by more than kOrthogonalGramTol.
ProtocolReport orthogonal_protocol(const BipartiteState& psi, const SpinSystem& sys, const Axis& axis,
                                   double beta);

/// phi = P_S psi_m / ||P_S psi_m|| with S the complement of the other present
/// psi_i. Throws kZeroProjection when ||P_S psi_m|| < kZeroProjectionTol or
/// c_m is absent.
MeasurementVector measurement_vector(const AncillaDecomposition& dec, Target target = Target::kMinus);

/// Non-orthogonal-ancilla protocol with the measurement vector above.
/// p_closed = c_m^2 |<phi|psi_m>|^2.
ProtocolReport nonorthogonal_protocol(const BipartiteState& psi, const SpinSystem& sys, const Axis& axis,
                                      double beta, Target target = Target::kMinus);

/// Picks the orthogonal path when the Gram matrix is the identity within
/// kOrthogonalGramTol, the non-orthogonal one otherwise.
ProtocolReport run_protocol(const BipartiteState& psi, const SpinSystem& sys, const Axis& axis, double beta,
                            Target target = Target::kMinus);

using Spin1Xi = std::array<double, 3>;

struct Spin1ClosedForms {
  CVector phi;                 // closed-form measurement vector
  double p = 0.0;              // single-outcome success probability
  double p_max = 0.0;          // maximum over xi1 at fixed (xi2, theta)
  std::optional<double> total; // two-outcome total, only for xi1 = xi3
};

/// Spin-1 closed forms for chi = diag(xi). Throws kOutOfDomain unless all
/// xi_k > 0 and normalized, or when a denominator vanishes.
Spin1ClosedForms spin1_closed_forms(const Spin1Xi& xi, double theta);

/// Spin-1 configurations where the generic normalizer vanishes:
/// (xi2 = 0, theta in {0, pi}) and (theta = pi/2, xi1 = 0 or xi3 = 0).
/// p_closed holds the special-case formula, p_bruteforce the generic engine.
/// Throws kUnreachable if xi2 = 0 and theta is not 0 or pi, kNotSpecialCase
/// if none of the cases applies.
ProtocolReport appendix_special_cases(const Spin1Xi& xi, double theta, double beta = 0.0);

struct ShotOutcome {
  Eigen::Index ancilla_outcome = 0;
  bool kept = false;
  std::optional<Branch> branch;
  std::optional<CVector> post_state;
};

/// Born-rule sampler for the ancilla measurement of a protocol. The outcome
/// table is computed once; each draw consumes its own random stream.
class ShotSampler {
 public:
  /// Uses run_protocol; when the non-orthogonal path offers the two-outcome
  /// variant and `prefer_combined` is set, shots follow that variant.
  ShotSampler(const BipartiteState& psi, const SpinSystem& sys, const Axis& axis, double beta,
              Target target = Target::kMinus, bool prefer_combined = true);

  const ProtocolReport& report() const noexcept { return report_; }
  /// The measurement scheme shots follow (the report itself or its combined variant).
  const ProtocolOutcome& scheme() const noexcept {
    return combined_ ? static_cast<const ProtocolOutcome&>(*report_.combined) : report_;
  }
  /// Probability of a kept shot.
  double keep_probability() const noexcept { return scheme().p_bruteforce; }
  const std::vector<double>& outcome_probabilities() const noexcept { return probabilities_; }

  /// Ancilla outcome for one uniform variate in [0, 1).
  Eigen::Index outcome_for(double u) const;
  std::optional<Branch> branch_of(Eigen::Index outcome) const;
  const CVector& post_state_of(Eigen::Index outcome) const;

  ShotOutcome draw(std::uint64_t seed, std::uint64_t stream) const;
  ShotOutcome draw(StreamRng& rng) const;

 private:
  ProtocolReport report_;
  bool combined_ = false;
  std::vector<double> probabilities_;
  std::vector<double> cumulative_;
  std::vector<CVector> post_states_;
};

ShotOutcome sample_shot(const BipartiteState& psi, const SpinSystem& sys, const Axis& axis, double beta,
                        std::uint64_t seed, std::uint64_t stream);

}  // namespace spinmetro
