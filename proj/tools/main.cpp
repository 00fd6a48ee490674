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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "spinmetro/error.hpp"
#include "spinmetro/version.hpp"

namespace {

using spinmetro::cli::CommandOutput;

// CSV goes to --out when given (JSON summary to stdout), otherwise CSV to
// stdout and the summary to stderr.
int emit(const CommandOutput& out, const std::string& path) {
  if (path.empty()) {
    std::cout << out.csv;
    std::cerr << out.json << '\n';
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << path << '\n';
      return 2;
    }
    f << out.csv;
    std::cout << out.json << '\n';
  }
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = spinmetro::cli;
  CLI::App app{"Postselected spin-s phase estimation: figure data, protocols, estimation."};
  app.set_version_flag("--version", std::string(spinmetro::kVersion));
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string out;
  std::string config_path;
  int grid = cli::kDefaultGrid;
  int m_max = cli::kDefaultMaxDimension;
  std::vector<double> xi2_sq = cli::kSurfacePanels;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "RNG seed (default: config, then $SPINMETRO_SEED, then 0)");
    sub->add_option("--out", out, "CSV output path (default: stdout)");
  };
  const auto with_grid = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("--grid", grid, "points per grid axis")->capture_default_str();
  };
  const auto with_config = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("--config", config_path, "key = value run configuration")->check(CLI::ExistingFile);
    sub->footer(std::string(cli::config_help()));
  };

  auto* dim = app.add_subcommand("fig-dimension", "p and max QFI versus Hilbert space dimension");
  common(dim);
  dim->add_option("--m-max", m_max, "largest dimension")->capture_default_str();
  dim->add_option("--grid", grid, "ignored; accepted for uniformity");
  auto* surface = app.add_subcommand("fig-surface", "spin-1 success probability over (theta, xi1^2)");
  with_grid(surface);
  surface->add_option("--xi2-sq", xi2_sq, "xi2^2 panels")->capture_default_str();
  auto* contour = app.add_subcommand("fig-contour", "spin-1 two-outcome total over (xi2^2, theta)");
  with_grid(contour);
  auto* appendix = app.add_subcommand("fig-appendix", "degenerate spin-1 configurations versus xi3");
  with_grid(appendix);
  auto* proto = app.add_subcommand("protocol", "run the postselection protocol for one configuration");
  with_config(proto);
  auto* est = app.add_subcommand("estimate", "Monte Carlo maximum-likelihood estimation of beta");
  with_config(est);
  auto* val = app.add_subcommand("validate", "run the structural invariant suites");
  common(val);

  CLI11_PARSE(app, argc, argv);

  try {
    std::optional<cli::RunConfig> cfg;
    if (!config_path.empty()) cfg = cli::load_config(config_path);
    const std::uint64_t s = cli::resolve_seed(seed, cfg ? &*cfg : nullptr);
    CommandOutput result;
    if (*dim) {
      result = cli::fig_dimension(m_max, s);
    } else if (*surface) {
      result = cli::fig_surface(xi2_sq, grid, s);
    } else if (*contour) {
      result = cli::fig_contour(grid, s);
    } else if (*appendix) {
      result = cli::fig_appendix(grid, s);
    } else if (*proto) {
      result = cli::protocol(cfg.value_or(cli::RunConfig{}), s);
    } else if (*est) {
      result = cli::estimate(cfg.value_or(cli::RunConfig{}), s);
    } else {
      result = cli::validate(s);
    }
    return emit(result, out);
  } catch (const spinmetro::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
