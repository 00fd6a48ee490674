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

#include "spinmetro/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "spinmetro/error.hpp"
#include "spinmetro/estimator.hpp"

namespace spinmetro {

namespace {

using Rng = std::mt19937_64;

CheckResult make(std::string name, double worst, double tol, std::string detail = {}) {
  return CheckResult{std::move(name), worst < tol, worst, tol, std::move(detail)};
}

CMatrix random_complex(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g;
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

BipartiteState random_state(Rng& rng, Eigen::Index m) {
  CMatrix chi = random_complex(rng, m, m);
  return BipartiteState(chi / chi.norm());
}

double theta_in(Rng& rng) { return std::uniform_real_distribution<double>(0.02, std::numbers::pi - 0.02)(rng); }

CheckResult check_spin_algebra() {
  double comm = 0.0;
  double casimir = 0.0;
  const Complex i(0.0, 1.0);
  for (int twice = 1; twice <= 12; ++twice) {
    const SpinSystem s = make_spin_system(Spin::from_twice(twice));
    comm = std::max(comm, (s.sx * s.sy - s.sy * s.sx - i * s.sz).cwiseAbs().maxCoeff());
    comm = std::max(comm, (s.sy * s.sz - s.sz * s.sy - i * s.sx).cwiseAbs().maxCoeff());
    comm = std::max(comm, (s.sz * s.sx - s.sx * s.sz - i * s.sy).cwiseAbs().maxCoeff());
    const double sv = s.spin.value();
    const CMatrix c = s.sx * s.sx + s.sy * s.sy + s.sz * s.sz - sv * (sv + 1.0) * CMatrix::Identity(s.dim(), s.dim());
    casimir = std::max(casimir, c.cwiseAbs().maxCoeff());
  }
  // Report the tighter of the two relative to its own tolerance.
  CheckResult r = make("spin commutators [S_a, S_b] = i S_c, s = 1/2..6", comm, 1e-12);
  if (casimir >= 1e-10) {
    r.passed = false;
    r.detail = "Casimir defect " + std::to_string(casimir);
  }
  return r;
}

CheckResult check_spectrum(Rng& rng) {
  double worst = 0.0;
  for (int twice = 1; twice <= 12; ++twice) {
    const SpinSystem sys = make_spin_system(Spin::from_twice(twice));
    for (int k = 0; k < 50; ++k) {
      const Axis axis(std::uniform_real_distribution<double>(0.0, std::numbers::pi)(rng));
      const HamiltonianSpectrum spec = spectrum(sys, axis);
      const CMatrix h = hamiltonian(sys, axis);
      for (Eigen::Index i = 0; i < spec.dim(); ++i) {
        worst = std::max(worst, std::abs(spec.energies[i] - (sys.spin.value() - static_cast<double>(i))));
        worst = std::max(worst, (h * spec.state(i) - spec.energies[i] * spec.state(i)).cwiseAbs().maxCoeff());
      }
      const CMatrix gram = spec.states.adjoint() * spec.states - CMatrix::Identity(spec.dim(), spec.dim());
      worst = std::max(worst, gram.cwiseAbs().maxCoeff());
      worst = std::max(worst, spec.states.imag().cwiseAbs().maxCoeff());
    }
  }
  return make("spectrum of S.n is {s, ..., -s} with real orthonormal eigenstates", worst, 1e-10);
}

CheckResult check_schmidt(Rng& rng) {
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const Eigen::Index m = 2 + k % 7;
    const BipartiteState psi = random_state(rng, m);
    const SchmidtForm f = schmidt(psi);
    worst = std::max(worst, (f.reconstruct() - psi.chi()).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(f.xis.squaredNorm() - 1.0));
  }
  return make("Schmidt decomposition round trip, 500 random states, m <= 8", worst, 1e-10);
}

CheckResult check_gram(Rng& rng) {
  double worst = 0.0;
  for (int twice = 1; twice <= 11; ++twice) {
    const SpinSystem sys = make_spin_system(Spin::from_twice(twice));
    for (int k = 0; k < 10; ++k) {
      const Axis axis(theta_in(rng));
      const OptimalBasis basis = optimal_basis(spectrum(sys, axis));
      const AncillaDecomposition me = ancilla_decomposition(maximally_entangled(sys.dim()), basis);
      worst = std::max(worst, me.gram_defect());
      const BipartiteState psi = random_state(rng, sys.dim());
      const AncillaDecomposition d = ancilla_decomposition(psi, basis);
      worst = std::max(worst, (d.reassemble() - psi.joint()).cwiseAbs().maxCoeff());
    }
  }
  return make("ancilla Gram matrix for maximal entanglement and resolution of identity", worst, 1e-10);
}

CheckResult check_projector(Rng& rng) {
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Eigen::Index dim = 2 + k % 9;
    const Eigen::Index count = 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(dim));
    std::vector<CVector> span;
    for (Eigen::Index j = 0; j < count; ++j) span.push_back(random_complex(rng, dim, 1).col(0));
    const CVector target = random_complex(rng, dim, 1).col(0);
    const CVector r = linalg::project_complement(span, target);
    for (const CVector& v : span) worst = std::max(worst, std::abs(v.normalized().dot(r)));
  }
  return make("project_complement output orthogonal to the span, 1000 random cases", worst, 1e-10);
}

struct Config {
  std::string label;
  BipartiteState state;
  SpinSystem sys;
  Axis axis;
};

std::vector<Config> protocol_configs(Rng& rng) {
  std::vector<Config> out;
  for (int twice = 1; twice <= 7; ++twice) {
    const SpinSystem sys = make_spin_system(Spin::from_twice(twice));
    const Axis axis(theta_in(rng));
    out.push_back({"maximal", maximally_entangled(sys.dim()), sys, axis});
    const double xi1 = std::uniform_real_distribution<double>(0.1, 0.99)(rng);
    out.push_back({"maxprob", max_prob_state(spectrum(sys, axis), xi1, std::sqrt(1.0 - xi1 * xi1)), sys, axis});
    out.push_back({"random", random_state(rng, sys.dim()), sys, Axis(theta_in(rng))});
  }
  return out;
}

std::vector<CheckResult> check_protocols(Rng& rng) {
  double beta_dev = 0.0;
  double fid = 0.0;
  double qfi = 0.0;
  double closed = 0.0;
  const std::vector<double> betas = {0.0, 0.13, 0.4, 0.77, 1.3, 2.9};
  for (const Config& c : protocol_configs(rng)) {
    double p0 = -1.0;
    for (double beta : betas) {
      const ProtocolReport r = run_protocol(c.state, c.sys, c.axis, beta);
      if (p0 < 0.0) p0 = r.p_bruteforce;
      beta_dev = std::max(beta_dev, std::abs(r.p_bruteforce - p0));
      fid = std::max(fid, 1.0 - r.min_fidelity());
      closed = std::max(closed, std::abs(r.p_closed - r.p_bruteforce));
      for (const auto& b : r.branches) qfi = std::max(qfi, std::abs(b.qfi - c.sys.spin.max_qfi()));
      if (r.combined) {
        closed = std::max(closed, std::abs(r.combined->p_closed - r.combined->p_bruteforce));
        fid = std::max(fid, 1.0 - r.combined->min_fidelity());
      }
    }
  }
  return {
      make("success probability independent of beta", beta_dev, 1e-12),
      make("post-selected probe fidelity with U(beta)|n+->", fid, 1e-10),
      make("post-selected probe QFI equals 4 s^2", qfi, 1e-8),
      make("closed-form versus brute-force success probability", closed, 1e-10),
  };
}

}  // namespace

std::vector<CheckResult> run_structural_checks(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckResult> out;
  auto guarded = [&out](const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      out.push_back(CheckResult{name, false, INFINITY, 0.0, e.what()});
    }
  };
  guarded("spin algebra", [&] { out.push_back(check_spin_algebra()); });
  guarded("spectrum", [&] { out.push_back(check_spectrum(rng)); });
  guarded("schmidt", [&] { out.push_back(check_schmidt(rng)); });
  guarded("gram", [&] { out.push_back(check_gram(rng)); });
  guarded("projector", [&] { out.push_back(check_projector(rng)); });
  guarded("protocols", [&] {
    for (auto& r : check_protocols(rng)) out.push_back(std::move(r));
  });
  return out;
}

}  // namespace spinmetro
