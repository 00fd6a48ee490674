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

#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cli/csv.hpp"
#include "json.hpp"
#include "spinmetro/error.hpp"
#include "spinmetro/validation.hpp"
#include "spinmetro/version.hpp"

namespace spinmetro::cli {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

json base_summary(std::string_view command, std::uint64_t seed) {
  return json{{"command", command}, {"version", kVersion}, {"seed", seed}};
}

void require_grid(int grid) {
  if (grid < 2) throw Error(ErrorCode::kInvalidConfig, "--grid must be at least 2");
}

// Open-interval midpoints: k = 0..n-1 -> lo + (hi - lo)(k + 1/2)/n.
double midpoint(double lo, double hi, int k, int n) { return lo + (hi - lo) * (k + 0.5) / n; }

Spin1Xi spin1_xi(double xi1_sq, double xi2_sq) {
  return {std::sqrt(xi1_sq), std::sqrt(xi2_sq), std::sqrt(std::max(0.0, 1.0 - xi1_sq - xi2_sq))};
}

const SpinSystem& spin1() {
  static const SpinSystem s = make_spin_system(1.0);
  return s;
}

json outcome_json(const ProtocolOutcome& o) {
  return json{{"p_closed", o.p_closed},
              {"p_bruteforce", o.p_bruteforce},
              {"branch", to_string(o.branch_set())},
              {"min_fidelity", o.min_fidelity()}};
}

}  // namespace

CommandOutput fig_dimension(int m_max, std::uint64_t seed) {
  if (m_max < 2) throw Error(ErrorCode::kInvalidConfig, "--m-max must be at least 2");
  CsvWriter csv("fig-dimension", seed);
  csv.param("m_max", std::to_string(m_max));
  csv.header({"m", "p", "mqfi", "p_brute", "mqfi_brute"});
  double worst = 0.0;
  for (int m = 2; m <= m_max; ++m) {
    const SpinSystem sys = make_spin_system(Spin::from_twice(m - 1));
    const ProtocolReport r = orthogonal_protocol(maximally_entangled(m), sys, Axis(0.0), 0.0);
    const double p = 2.0 / m;
    const double mqfi = static_cast<double>((m - 1) * (m - 1));
    worst = std::max(worst, std::abs(p - r.p_bruteforce));
    csv.cell(m).cell(p).cell(mqfi).cell(r.p_bruteforce).cell(r.qfi_achieved).end_row();
  }
  json j = base_summary("fig-dimension", seed);
  j["rows"] = m_max - 1;
  j["max_abs_p_diff"] = worst;
  return {csv.str(), j.dump(2)};
}

CommandOutput fig_surface(const std::vector<double>& xi2_sq, int grid, std::uint64_t seed) {
  require_grid(grid);
  if (xi2_sq.empty()) throw Error(ErrorCode::kInvalidConfig, "--xi2-sq needs at least one value");
  for (double x : xi2_sq) {
    if (!(x > 0.0 && x < 1.0)) throw Error(ErrorCode::kInvalidConfig, "--xi2-sq values must lie in (0, 1)");
  }
  CsvWriter csv("fig-surface", seed);
  csv.param("grid", std::to_string(grid));
  std::string panels;
  for (double x : xi2_sq) panels += (panels.empty() ? "" : " ") + format_real(x);
  csv.param("xi2_sq", panels);
  csv.header({"xi2_sq", "theta", "xi1_sq", "p", "p_brute", "p_max"});
  double worst = 0.0;
  for (double x2 : xi2_sq) {
    for (int i = 0; i < grid; ++i) {
      const double theta = midpoint(0.0, kPi, i, grid);
      const Axis axis(theta);
      for (int k = 0; k < grid; ++k) {
        const double x1 = midpoint(0.0, 1.0 - x2, k, grid);
        const Spin1Xi xi = spin1_xi(x1, x2);
        const Spin1ClosedForms f = spin1_closed_forms(xi, theta);
        const double brute = nonorthogonal_protocol(diagonal_state(xi), spin1(), axis, 0.0).p_bruteforce;
        worst = std::max(worst, std::abs(f.p - brute));
        csv.cell(x2).cell(theta).cell(x1).cell(f.p).cell(brute).cell(f.p_max).end_row();
      }
    }
  }
  json j = base_summary("fig-surface", seed);
  j["grid"] = grid;
  j["xi2_sq"] = xi2_sq;
  j["max_abs_p_diff"] = worst;
  return {csv.str(), j.dump(2)};
}

CommandOutput fig_contour(int grid, std::uint64_t seed) {
  require_grid(grid);
  std::vector<double> rows;
  for (int i = 0; i < grid; ++i) rows.push_back(midpoint(0.0, 1.0, i, grid));
  rows.push_back(1.0 / 3.0);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  CsvWriter csv("fig-contour", seed);
  csv.param("grid", std::to_string(grid));
  csv.header({"xi2_sq", "theta", "P", "P_brute"});
  double worst = 0.0;
  for (double x2 : rows) {
    const Spin1Xi xi = spin1_xi(0.5 * (1.0 - x2), x2);
    for (int k = 0; k < grid; ++k) {
      const double theta = midpoint(0.0, kPi, k, grid);
      const Spin1ClosedForms f = spin1_closed_forms(xi, theta);
      const ProtocolReport r = nonorthogonal_protocol(diagonal_state(xi), spin1(), Axis(theta), 0.0);
      if (!f.total || !r.combined) throw Error(ErrorCode::kUnreachable, "two-outcome variant missing on xi1 = xi3");
      worst = std::max(worst, std::abs(*f.total - r.combined->p_bruteforce));
      csv.cell(x2).cell(theta).cell(*f.total).cell(r.combined->p_bruteforce).end_row();
    }
  }
  json j = base_summary("fig-contour", seed);
  j["grid"] = grid;
  j["max_abs_p_diff"] = worst;
  return {csv.str(), j.dump(2)};
}

CommandOutput fig_appendix(int grid, std::uint64_t seed) {
  require_grid(grid);
  CsvWriter csv("fig-appendix", seed);
  csv.param("grid", std::to_string(grid));
  csv.header({"xi3", "p_polar", "p_polar_brute", "p_equatorial", "p_equatorial_brute"});
  double worst = 0.0;
  for (int k = 0; k < grid; ++k) {
    const double x3 = midpoint(0.0, 1.0, k, grid);
    const double x1 = std::sqrt(1.0 - x3 * x3);
    const ProtocolReport polar = appendix_special_cases({x1, 0.0, x3}, 0.0);
    const ProtocolReport equatorial = appendix_special_cases({0.0, x1, x3}, kPi / 2);
    worst = std::max({worst, std::abs(polar.p_closed - polar.p_bruteforce),
                      std::abs(equatorial.p_closed - equatorial.p_bruteforce)});
    csv.cell(x3).cell(polar.p_closed).cell(polar.p_bruteforce);
    csv.cell(equatorial.p_closed).cell(equatorial.p_bruteforce).end_row();
  }
  json j = base_summary("fig-appendix", seed);
  j["grid"] = grid;
  j["max_abs_p_diff"] = worst;
  return {csv.str(), j.dump(2)};
}

namespace {

void run_params(CsvWriter& csv, const RunConfig& cfg) {
  csv.param("spin", cfg.spin);
  csv.param("theta", cfg.theta);
  csv.param("beta", cfg.beta);
  csv.param("state", cfg.state);
  csv.param("target", cfg.target);
}

json run_summary(std::string_view command, const RunConfig& cfg, std::uint64_t seed) {
  json j = base_summary(command, seed);
  j["spin"] = cfg.spin;
  j["theta"] = cfg.theta;
  j["beta"] = cfg.beta;
  j["state"] = cfg.state;
  j["target"] = cfg.target;
  return j;
}

void branch_rows(CsvWriter& csv, std::string_view scheme, const ProtocolOutcome& o) {
  for (const BranchResult& b : o.branches) {
    csv.cell(scheme).cell(static_cast<long long>(b.ancilla_outcome)).cell(to_string(b.branch));
    csv.cell(b.probability).cell(b.fidelity).cell(b.qfi).end_row();
  }
}

}  // namespace

CommandOutput protocol(const RunConfig& cfg, std::uint64_t seed) {
  const PreparedRun run = prepare(cfg);
  const ProtocolSetup& s = run.setup;
  const ProtocolReport r = run_protocol(s.state, s.sys, s.axis, run.beta, s.target);

  CsvWriter csv("protocol", seed);
  run_params(csv, cfg);
  csv.header({"scheme", "outcome", "branch", "probability", "fidelity", "qfi"});
  branch_rows(csv, "primary", r);
  if (r.combined) branch_rows(csv, "combined", *r.combined);

  json j = run_summary("protocol", cfg, seed);
  j["path"] = to_string(r.path);
  j.update(outcome_json(r));
  j["qfi_achieved"] = r.qfi_achieved;
  j["max_qfi"] = s.sys.spin.max_qfi();
  j["combined"] = r.combined ? outcome_json(*r.combined) : json(nullptr);
  return {csv.str(), j.dump(2)};
}

CommandOutput estimate(const RunConfig& cfg, std::uint64_t seed) {
  const PreparedRun run = prepare(cfg);
  const EstimationConfig ec{run.beta, cfg.shots, cfg.trials, seed, cfg.threads};
  try {
    spinmetro::validate(ec, run.setup.sys.spin);
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("config: ") + e.what());
  }
  const EstimationResult r = run_estimation(ec, run.setup);

  CsvWriter csv("estimate", seed);
  run_params(csv, cfg);
  csv.param("shots", std::to_string(cfg.shots));
  csv.param("trials", std::to_string(cfg.trials));
  csv.header({"trial", "beta_hat", "attempts"});
  for (std::size_t t = 0; t < r.beta_hat.size(); ++t) {
    csv.cell(static_cast<long long>(t)).cell(r.beta_hat[t]).cell(r.attempts[t]).end_row();
  }

  json j = run_summary("estimate", cfg, seed);
  j["shots"] = r.shots;
  j["trials"] = cfg.trials;
  j["kept_fraction"] = r.kept_fraction;
  j["total_attempts"] = r.total_attempts;
  j["mean"] = r.mean;
  j["bias"] = r.mean - run.beta;
  j["empirical_variance"] = r.empirical_variance;
  j["mse"] = r.mse;
  j["fisher"] = r.fisher;
  j["crb"] = r.crb;
  j["normalized_variance"] = r.normalized_variance();
  return {csv.str(), j.dump(2)};
}

CommandOutput validate(std::uint64_t seed) {
  const std::vector<CheckResult> checks = run_structural_checks(seed);
  CsvWriter csv("validate", seed);
  csv.header({"check", "passed", "worst", "tolerance", "detail"});
  json failed = json::array();
  for (const CheckResult& c : checks) {
    csv.cell(c.name).cell(c.passed ? 1LL : 0LL).cell(c.worst).cell(c.tolerance).cell(c.detail).end_row();
    if (!c.passed) failed.push_back(c.name);
  }
  json j = base_summary("validate", seed);
  j["checks"] = checks.size();
  j["passed"] = failed.empty();
  j["failed"] = failed;
  return {csv.str(), j.dump(2), failed.empty() ? 0 : 1};
}

}  // namespace spinmetro::cli
