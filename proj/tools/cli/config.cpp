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

#include "cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spinmetro/error.hpp"

namespace spinmetro::cli {

namespace {

[[noreturn]] void fail(std::string_view source, int line, std::string_view field, const std::string& what) {
  std::ostringstream os;
  os << source;
  if (line > 0) os << ":" << line;
  if (!field.empty()) os << ": field '" << field << "'";
  os << ": " << what;
  throw Error(ErrorCode::kInvalidConfig, os.str());
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  if constexpr (std::is_floating_point_v<T>) {
    // from_chars for double is not available on every toolchain we target.
    const std::string buf(s);
    char* end = nullptr;
    out = std::strtod(buf.c_str(), &end);
    return end == buf.c_str() + buf.size() && std::isfinite(out);
  } else {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
  }
}

struct Field {
  std::string_view source;
  int line;
  std::string_view key;
  std::string_view value;

  double real() const {
    double v = 0;
    if (!parse_number(value, v)) fail(source, line, key, "expected a real number, got '" + std::string(value) + "'");
    return v;
  }
  template <class T>
  T integer() const {
    T v = 0;
    if (!parse_number(value, v)) fail(source, line, key, "expected an integer, got '" + std::string(value) + "'");
    return v;
  }
  std::vector<double> reals() const {
    std::vector<double> out;
    std::string_view rest = value;
    while (true) {
      const auto comma = rest.find(',');
      double v = 0;
      if (!parse_number(rest.substr(0, comma), v)) fail(source, line, key, "expected a comma-separated list of reals");
      out.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return out;
  }
  std::string word(std::initializer_list<std::string_view> allowed) const {
    for (auto a : allowed) {
      if (value == a) return std::string(a);
    }
    std::string list;
    for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
    fail(source, line, key, "expected one of " + list + ", got '" + std::string(value) + "'");
  }
};

}  // namespace

std::string_view config_help() {
  return "Config file: one `key = value` per line, '#' starts a comment. Angles in radians.\n"
         "  spin     = s, half-integer >= 1/2   (or m = 2s+1)\n"
         "  theta    = axis polar angle in [0, pi]\n"
         "  beta     = true phase\n"
         "  state    = maximal | maxprob | diagonal | chi\n"
         "  xi       = maxprob: xi1, xi2; diagonal: xi_1, ..., xi_m\n"
         "  chi      = m*m real parts of chi, row-major (probe rows)\n"
         "  chi_imag = m*m imaginary parts (optional)\n"
         "  target   = minus | plus\n"
         "  shots    = kept shots per trial\n"
         "  trials   = estimation trials\n"
         "  threads  = worker threads for estimation\n"
         "  seed     = unsigned 64-bit seed\n";
}

RunConfig parse_config(std::string_view text, std::string_view source) {
  RunConfig cfg;
  int line_no = 0;
  std::vector<std::string> seen;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(source, line_no, "", "expected `key = value`");
    const Field f{source, line_no, trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
    if (f.key.empty()) fail(source, line_no, "", "missing key");
    if (f.value.empty()) fail(source, line_no, f.key, "missing value");
    for (const auto& s : seen) {
      if (s == f.key) fail(source, line_no, f.key, "duplicate key");
    }
    seen.emplace_back(f.key);

    if (f.key == "spin") {
      cfg.spin = f.real();
    } else if (f.key == "m") {
      const int m = f.integer<int>();
      if (m < 2) fail(source, line_no, f.key, "dimension must be at least 2");
      cfg.spin = 0.5 * (m - 1);
    } else if (f.key == "theta") {
      cfg.theta = f.real();
    } else if (f.key == "beta") {
      cfg.beta = f.real();
    } else if (f.key == "state") {
      cfg.state = f.word({"maximal", "maxprob", "diagonal", "chi"});
    } else if (f.key == "xi") {
      cfg.xi = f.reals();
    } else if (f.key == "chi") {
      cfg.chi = f.reals();
    } else if (f.key == "chi_imag") {
      cfg.chi_imag = f.reals();
    } else if (f.key == "target") {
      cfg.target = f.word({"minus", "plus"});
    } else if (f.key == "shots") {
      cfg.shots = f.integer<long long>();
    } else if (f.key == "trials") {
      cfg.trials = f.integer<int>();
    } else if (f.key == "threads") {
      cfg.threads = f.integer<int>();
      if (cfg.threads < 1) fail(source, line_no, f.key, "must be at least 1");
    } else if (f.key == "seed") {
      cfg.seed = f.integer<std::uint64_t>();
    } else {
      fail(source, line_no, f.key, "unknown key");
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidConfig, path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const RunConfig* config) {
  if (flag) return *flag;
  if (config && config->seed) return *config->seed;
  if (const char* env = std::getenv("SPINMETRO_SEED"); env && *env) {
    std::uint64_t v = 0;
    if (!parse_number(std::string_view(env), v)) {
      throw Error(ErrorCode::kInvalidConfig, "SPINMETRO_SEED: expected an unsigned integer");
    }
    return v;
  }
  return 0;
}

namespace {

// Runs `f`, turning module errors into config errors that name `field`.
template <class F>
auto guarded(std::string_view field, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidConfig) throw;
    fail("config", 0, field, e.what());
  }
}

BipartiteState make_state(const RunConfig& cfg, const SpinSystem& sys, const Axis& axis) {
  const Eigen::Index m = sys.dim();
  if (cfg.state == "maximal") return maximally_entangled(m);
  if (cfg.state == "maxprob") {
    if (cfg.xi.size() != 2) {
      if (cfg.xi.empty()) {
        const double r = 1.0 / std::sqrt(2.0);
        return max_prob_state(spectrum(sys, axis), r, r);
      }
      fail("config", 0, "xi", "maxprob takes two coefficients xi1, xi2");
    }
    return guarded("xi", [&] { return max_prob_state(spectrum(sys, axis), cfg.xi[0], cfg.xi[1]); });
  }
  if (cfg.state == "diagonal") {
    if (static_cast<Eigen::Index>(cfg.xi.size()) != m) {
      fail("config", 0, "xi", "diagonal state needs " + std::to_string(m) + " coefficients");
    }
    return guarded("xi", [&] { return diagonal_state(cfg.xi); });
  }
  const auto n = static_cast<std::size_t>(m * m);
  if (cfg.chi.size() != n) fail("config", 0, "chi", "needs " + std::to_string(n) + " entries");
  if (!cfg.chi_imag.empty() && cfg.chi_imag.size() != n) {
    fail("config", 0, "chi_imag", "needs " + std::to_string(n) + " entries");
  }
  CMatrix chi(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto k = static_cast<std::size_t>(i * m + j);
      chi(i, j) = Complex(cfg.chi[k], cfg.chi_imag.empty() ? 0.0 : cfg.chi_imag[k]);
    }
  }
  return guarded("chi", [&] { return BipartiteState(chi); });
}

}  // namespace

PreparedRun prepare(const RunConfig& cfg) {
  const Spin spin = guarded("spin", [&] { return Spin::from_double(cfg.spin); });
  const Axis axis = guarded("theta", [&] { return Axis(cfg.theta); });
  if (!std::isfinite(cfg.beta)) fail("config", 0, "beta", "must be finite");
  SpinSystem sys = make_spin_system(spin);
  BipartiteState state = make_state(cfg, sys, axis);
  const Target target = cfg.target == "plus" ? Target::kPlus : Target::kMinus;
  return {ProtocolSetup{std::move(state), std::move(sys), axis, target}, cfg.beta};
}

}  // namespace spinmetro::cli
