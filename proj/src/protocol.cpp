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

#include "spinmetro/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spinmetro/error.hpp"

namespace spinmetro {

std::string_view to_string(Branch b) { return b == Branch::kPlus ? "n+" : "n-"; }

std::string_view to_string(ProtocolPath p) {
  return p == ProtocolPath::kOrthogonal ? "orthogonal" : "nonorthogonal";
}

std::string_view to_string(BranchSet b) {
  switch (b) {
    case BranchSet::kNone: return "none";
    case BranchSet::kPlus: return "n+";
    case BranchSet::kMinus: return "n-";
    case BranchSet::kBoth: return "both";
  }
  return "none";
}

BranchSet ProtocolOutcome::branch_set() const {
  bool plus = false;
  bool minus = false;
  for (const auto& s : measurement.success) {
    if (!s) continue;
    (*s == Branch::kPlus ? plus : minus) = true;
  }
  if (plus && minus) return BranchSet::kBoth;
  if (plus) return BranchSet::kPlus;
  if (minus) return BranchSet::kMinus;
  return BranchSet::kNone;
}

double ProtocolOutcome::min_fidelity() const {
  double f = 1.0;
  for (const auto& b : branches) f = std::min(f, b.fidelity);
  return f;
}

const CVector& ProtocolReport::post_state() const {
  if (branches.empty()) throw Error(ErrorCode::kZeroProjection, "protocol has no successful branch");
  return branches.front().post_state;
}

std::vector<CVector> simulate_ancilla_measurement(const BipartiteState& psi, const CMatrix& probe_unitary,
                                                  const CMatrix& ancilla_basis) {
  const Eigen::Index m = psi.dim();
  const CMatrix id = CMatrix::Identity(m, m);
  const CVector evolved = linalg::kron(probe_unitary, id) * psi.joint();
  std::vector<CVector> out;
  out.reserve(static_cast<std::size_t>(ancilla_basis.cols()));
  for (Eigen::Index k = 0; k < ancilla_basis.cols(); ++k) {
    const CVector b = ancilla_basis.col(k);
    const CVector projected = linalg::kron(id, b * b.adjoint()) * evolved;
    // projected = w (x) b; read w back off the ancilla factor.
    CVector w(m);
    for (Eigen::Index i = 0; i < m; ++i) w[i] = b.dot(projected.segment(i * m, m));
    out.push_back(std::move(w));
  }
  return out;
}

namespace {

struct Context {
  HamiltonianSpectrum spec;
  OptimalBasis basis;
  CMatrix h;
  AncillaDecomposition dec;
};

Context make_context(const BipartiteState& psi, const SpinSystem& sys, const Axis& axis) {
  if (psi.dim() != sys.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "state dimension does not match the spin");
  }
  HamiltonianSpectrum spec = spectrum(sys, axis);
  OptimalBasis basis = optimal_basis(spec);
  AncillaDecomposition dec = ancilla_decomposition(psi, basis);
  return Context{std::move(spec), std::move(basis), hamiltonian(sys, axis), std::move(dec)};
}

Branch branch_of(Target t) { return t == Target::kMinus ? Branch::kMinus : Branch::kPlus; }

// Fills p_bruteforce and the kept branches of a scheme from the joint state.
void evaluate(ProtocolOutcome& out, const BipartiteState& psi, const Context& ctx, double beta) {
  const CMatrix u = evolution_operator(ctx.spec, beta);
  const std::vector<CVector> probe = simulate_ancilla_measurement(psi, u, out.measurement.basis);
  const Eigen::Index m = psi.dim();
  out.p_bruteforce = 0.0;
  out.branches.clear();
  for (std::size_t k = 0; k < probe.size(); ++k) {
    const auto& success = out.measurement.success[k];
    if (!success) continue;
    const double prob = probe[k].squaredNorm();
    out.p_bruteforce += prob;
    if (prob <= 1e-14) continue;
    const CVector post = probe[k] / std::sqrt(prob);
    const CVector ideal = u * ctx.basis.phi(*success == Branch::kPlus ? 0 : m - 1);
    BranchResult r;
    r.branch = *success;
    r.ancilla_outcome = static_cast<Eigen::Index>(k);
    r.probability = prob;
    r.fidelity = linalg::fidelity(post, ideal);
    r.qfi = qfi_pure(u.adjoint() * post, ctx.h);
    r.post_state = post;
    out.branches.push_back(std::move(r));
  }
}

void finish(ProtocolReport& r) {
  r.branch = r.branch_set();
  r.qfi_achieved = 0.0;
  if (!r.branches.empty()) {
    r.qfi_achieved = r.branches.front().qfi;
    for (const auto& b : r.branches) r.qfi_achieved = std::min(r.qfi_achieved, b.qfi);
  }
}

ProtocolReport orthogonal_impl(const BipartiteState& psi, const Context& ctx, double beta) {
  const AncillaDecomposition& dec = ctx.dec;
  const Eigen::Index m = dec.dim();
  std::vector<CVector> columns;
  std::vector<std::optional<Branch>> success;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!dec.is_present(i)) continue;
    columns.push_back(dec.psi(i));
    if (i == 0) {
      success.emplace_back(Branch::kPlus);
    } else if (i == m - 1) {
      success.emplace_back(Branch::kMinus);
    } else {
      success.emplace_back();
    }
  }
  // Present psi_i are orthonormal only to kOrthogonalGramTol; re-orthonormalize
  // for the basis but keep their order so outcome k still means psi_k.
  const std::vector<CVector> ortho = linalg::orthonormalize(columns);
  ProtocolReport r;
  r.path = ProtocolPath::kOrthogonal;
  r.measurement.basis = linalg::complete_basis(ortho, m);
  success.resize(static_cast<std::size_t>(m));
  r.measurement.success = std::move(success);
  r.p_closed = 0.0;
  if (dec.is_present(0)) r.p_closed += dec.cs[0] * dec.cs[0];
  if (dec.is_present(m - 1)) r.p_closed += dec.cs[m - 1] * dec.cs[m - 1];
  evaluate(r, psi, ctx, beta);
  finish(r);
  return r;
}

ProtocolReport nonorthogonal_impl(const BipartiteState& psi, const Context& ctx, double beta, Target target) {
  const AncillaDecomposition& dec = ctx.dec;
  const Eigen::Index m = dec.dim();
  const Eigen::Index keep = target == Target::kMinus ? m - 1 : 0;
  const Eigen::Index other = target == Target::kMinus ? 0 : m - 1;

  const MeasurementVector mv = measurement_vector(dec, target);
  ProtocolReport r;
  r.path = ProtocolPath::kNonOrthogonal;
  r.measurement.basis = mv.completed_basis;
  r.measurement.success.assign(static_cast<std::size_t>(m), std::nullopt);
  r.measurement.success[0] = branch_of(target);
  const double ck = dec.cs[keep];
  r.p_closed = ck * ck * std::norm(mv.phi.dot(dec.psi(keep)));
  evaluate(r, psi, ctx, beta);

  if (dec.is_present(other)) {
    bool isolated = true;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == other || !dec.is_present(i)) continue;
      if (std::abs(dec.gram(other, i)) >= kCombinedOverlapTol) isolated = false;
    }
    if (isolated) {
      ProtocolOutcome c;
      const std::vector<CVector> first = {mv.phi, dec.psi(other)};
      c.measurement.basis = linalg::complete_basis(linalg::orthonormalize(first), m);
      c.measurement.success.assign(static_cast<std::size_t>(m), std::nullopt);
      c.measurement.success[0] = branch_of(target);
      c.measurement.success[1] = target == Target::kMinus ? Branch::kPlus : Branch::kMinus;
      c.p_closed = r.p_closed + dec.cs[other] * dec.cs[other];
      evaluate(c, psi, ctx, beta);
      r.combined = std::move(c);
    }
  }
  finish(r);
  return r;
}

}  // namespace

ProtocolReport orthogonal_protocol(const BipartiteState& psi, const SpinSystem& sys, const Axis& axis,
                                   double beta) {
  const Context ctx = make_context(psi, sys, axis);
  const double defect = ctx.dec.gram_defect();
  if (defect > kOrthogonalGramTol) {
    throw Error(ErrorCode::kNonOrthogonalAncilla,
                "Gram matrix of the ancilla states deviates from identity by " + std::to_string(defect));
  }
  return orthogonal_impl(psi, ctx, beta);
}

MeasurementVector measurement_vector(const AncillaDecomposition& dec, Target target) {
  const Eigen::Index m = dec.dim();
  const Eigen::Index keep = target == Target::kMinus ? m - 1 : 0;
  if (!dec.is_present(keep)) {
    throw Error(ErrorCode::kZeroProjection, "the target branch has c = 0");
  }
  std::vector<CVector> others;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (i != keep && dec.is_present(i)) others.push_back(dec.psi(i));
  }
  const CVector projected = linalg::project_complement(others, dec.psi(keep));
  const double norm = projected.norm();
  if (norm < kZeroProjectionTol) {
    throw Error(ErrorCode::kZeroProjection, "||P_S psi|| = " + std::to_string(norm));
  }
  MeasurementVector mv;
  mv.phi = projected / norm;
  const std::vector<CVector> first = {mv.phi};
  mv.completed_basis = linalg::complete_basis(first, m);
  return mv;
}

ProtocolReport nonorthogonal_protocol(const BipartiteState& psi, const SpinSystem& sys, const Axis& axis,
                                      double beta, Target target) {
  return nonorthogonal_impl(psi, make_context(psi, sys, axis), beta, target);
}

ProtocolReport run_protocol(const BipartiteState& psi, const SpinSystem& sys, const Axis& axis, double beta,
                            Target target) {
  const Context ctx = make_context(psi, sys, axis);
  if (ctx.dec.gram_defect() <= kOrthogonalGramTol) return orthogonal_impl(psi, ctx, beta);
  return nonorthogonal_impl(psi, ctx, beta, target);
}

namespace {

constexpr double kSpecialTol = 1e-12;

bool near(double a, double b) { return std::abs(a - b) <= kSpecialTol; }

void check_spin1_xi(const Spin1Xi& xi) {
  for (double x : xi) {
    if (!std::isfinite(x) || x < 0.0) throw Error(ErrorCode::kOutOfDomain, "xi must be finite and nonnegative");
  }
  const double n2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
  if (std::abs(n2 - 1.0) > 1e-10) {
    throw Error(ErrorCode::kOutOfDomain, "xi1^2 + xi2^2 + xi3^2 = " + std::to_string(n2));
  }
}

}  // namespace

Spin1ClosedForms spin1_closed_forms(const Spin1Xi& xi, double theta) {
  check_spin1_xi(xi);
  const auto [x1, x2, x3] = xi;
  if (!(x1 > 0.0 && x2 > 0.0 && x3 > 0.0)) {
    throw Error(ErrorCode::kOutOfDomain, "the generic closed forms need xi1, xi2, xi3 > 0");
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double x2sq = x2 * x2;
  const double r2 = std::sqrt(2.0);

  const double n2 = 0.5 * x2sq * (x1 * x1 + x3 * x3) * c * c + x1 * x1 * x3 * x3 * s * s;
  if (!(n2 > 0.0)) throw Error(ErrorCode::kOutOfDomain, "normalizer of the measurement vector vanishes");
  const double n = std::sqrt(n2);

  Spin1ClosedForms out;
  out.phi.resize(3);
  out.phi << x2 * x3 * c / (r2 * n), x1 * x3 * s / n, -x1 * x2 * c / (r2 * n);

  const double denom = x2sq * (1.0 - x2sq) / (2.0 * x1 * x1 * x3 * x3) * c * c + s * s;
  if (!(denom > 0.0)) throw Error(ErrorCode::kOutOfDomain, "single-outcome denominator vanishes");
  out.p = x2sq / denom;

  const double denom_max = 2.0 * x2sq * c * c + s * s * (1.0 - x2sq);
  if (!(denom_max > 0.0)) throw Error(ErrorCode::kOutOfDomain, "p_max denominator vanishes");
  out.p_max = x2sq * (1.0 - x2sq) / denom_max;

  if (std::abs(x1 - x3) <= 1e-12) out.total = out.p_max + 0.5 * (1.0 - x2sq);
  return out;
}

ProtocolReport appendix_special_cases(const Spin1Xi& xi, double theta, double beta) {
  check_spin1_xi(xi);
  const auto [x1, x2, x3] = xi;
  const bool polar = near(theta, 0.0) || near(theta, std::numbers::pi);
  const bool equatorial = near(theta, 0.5 * std::numbers::pi);

  enum class Case { kPolar, kEquatorial } which;
  if (near(x2, 0.0) && polar) {
    which = Case::kPolar;
  } else if (near(x2, 0.0)) {
    throw Error(ErrorCode::kUnreachable, "xi2 = 0 only collapses onto n- for theta = 0 or pi");
  } else if (equatorial && (near(x1, 0.0) || near(x3, 0.0))) {
    which = Case::kEquatorial;
  } else {
    throw Error(ErrorCode::kNotSpecialCase, "use the generic spin-1 path");
  }

  const SpinSystem sys = make_spin_system(Spin::from_twice(2));
  const std::array<double, 3> diag = {x1, x2, x3};
  ProtocolReport r = nonorthogonal_protocol(diagonal_state(diag), sys, Axis(theta), beta);
  if (which == Case::kPolar) {
    r.p_closed = 2.0 * x3 * x3 * (1.0 - x3 * x3);
    if (r.combined) r.combined->p_closed = r.p_closed + 0.5 * (x1 * x1 + x3 * x3);
  } else {
    r.p_closed = x2 * x2;
  }
  return r;
}

ShotSampler::ShotSampler(const BipartiteState& psi, const SpinSystem& sys, const Axis& axis, double beta,
                         Target target, bool prefer_combined)
    : report_(run_protocol(psi, sys, axis, beta, target)) {
  combined_ = prefer_combined && report_.combined.has_value();
  const HamiltonianSpectrum spec = spectrum(sys, axis);
  const std::vector<CVector> probe =
      simulate_ancilla_measurement(psi, evolution_operator(spec, beta), scheme().measurement.basis);
  double total = 0.0;
  for (const CVector& w : probe) {
    const double p = w.squaredNorm();
    probabilities_.push_back(p);
    total += p;
    cumulative_.push_back(total);
    post_states_.push_back(p > 0.0 ? CVector(w / std::sqrt(p)) : w);
  }
  for (double& c : cumulative_) c /= total;
  cumulative_.back() = 1.0;
}

Eigen::Index ShotSampler::outcome_for(double u) const {
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto idx = std::min<std::ptrdiff_t>(it - cumulative_.begin(), static_cast<std::ptrdiff_t>(cumulative_.size()) - 1);
  return static_cast<Eigen::Index>(idx);
}

std::optional<Branch> ShotSampler::branch_of(Eigen::Index outcome) const {
  return scheme().measurement.success[static_cast<std::size_t>(outcome)];
}

const CVector& ShotSampler::post_state_of(Eigen::Index outcome) const {
  return post_states_[static_cast<std::size_t>(outcome)];
}

ShotOutcome ShotSampler::draw(StreamRng& rng) const {
  ShotOutcome out;
  out.ancilla_outcome = outcome_for(rng.uniform());
  out.branch = branch_of(out.ancilla_outcome);
  out.kept = out.branch.has_value();
  if (out.kept) out.post_state = post_state_of(out.ancilla_outcome);
  return out;
}

ShotOutcome ShotSampler::draw(std::uint64_t seed, std::uint64_t stream) const {
  StreamRng rng(seed, stream);
  return draw(rng);
}

ShotOutcome sample_shot(const BipartiteState& psi, const SpinSystem& sys, const Axis& axis, double beta,
                        std::uint64_t seed, std::uint64_t stream) {
  return ShotSampler(psi, sys, axis, beta).draw(seed, stream);
}

}  // namespace spinmetro
