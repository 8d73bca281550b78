#pragma once

// Run configuration: a TOML-compatible subset of flat key = value lines under
// [section] headers. Lists are written [a, b, c]; strings may be quoted;
// '#' starts a comment. Unknown sections and keys are rejected.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "kmsent/adiabatic.hpp"
#include "kmsent/errors.hpp"
#include "kmsent/functionals.hpp"
#include "kmsent/spectral.hpp"
#include "kmsent/thermal.hpp"

namespace kmsent::cli {

struct FunctionalBlock {
  std::vector<double> coeffs;
  double amplitude = 1.0;
  double width = 1.0;
};

struct ThermalBlock {
  double beta = 1.0;
  double mass = 1.0;
  int lambda_order = 2;
};

struct CutoffBlock {
  int n_max = 8;
  RampKind ramp = RampKind::smoothstep;
  /// Allowed relative gap between S(h_{n_max})/I(h_{n_max}) and the density-mode value.
  double tolerance = 0.01;
};

struct NessBlock {
  double t_min = 10.0;
  double t_max = 1000.0;
  int samples = 41;
};

struct OracleBlock {
  std::vector<int> dims{2, 3, 4, 6};
  int trials = 100;
  std::uint64_t seed = 20240611;
  double t_min = -3.0;
  double t_max = 3.0;
  double beta_min = 0.2;
  double beta_max = 4.0;
  double tolerance = 1e-9;
};

struct BalanceBlock {
  double tolerance = 1e-6;
};

struct RunConfig {
  ThermalBlock thermal;
  FunctionalBlock k1{{1.0}};
  FunctionalBlock k2{{0.0}};
  FunctionalBlock k3{{0.5}};
  GridSettings grid;
  std::vector<double> times{0.0, 0.5, 1.0, 2.0, 5.0};
  CutoffBlock cutoff;
  NessBlock ness;
  OracleBlock oracle;
  BalanceBlock balance;

  ThermalParams params() const { return ThermalParams(thermal.beta, thermal.mass, thermal.lambda_order); }
  GaussianProfile profile() const { return GaussianProfile(k1.amplitude, k1.width); }
  SharedProfileFunctional functional(int i) const {
    const FunctionalBlock& b = i == 1 ? k1 : i == 2 ? k2 : k3;
    return SharedProfileFunctional(b.coeffs, GaussianProfile(b.amplitude, b.width));
  }

  /// Module preconditions, checked before any dispatch.
  void validate() const;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

/// Drops '#' comments outside double quotes.
inline std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

inline std::string where(const std::string& section, const std::string& key) { return section + "." + key; }

inline double parse_double(const std::string& raw, const std::string& name) {
  const std::string s = trim(raw);
  double value = 0.0;
  const auto* begin = s.data();
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(begin, end, value);
  if (s.empty() || res.ec != std::errc() || res.ptr != end)
    throw configuration_error(name + ": expected a number, got '" + s + "'");
  return value;
}

template <class Int>
Int parse_integer(const std::string& raw, const std::string& name) {
  const std::string s = trim(raw);
  Int value{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw configuration_error(name + ": expected an integer, got '" + s + "'");
  return value;
}

inline std::vector<std::string> split_list(const std::string& raw, const std::string& name) {
  const std::string s = trim(raw);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw configuration_error(name + ": expected a list like [1.0, 0.5], got '" + s + "'");
  std::vector<std::string> items;
  std::stringstream body(s.substr(1, s.size() - 2));
  std::string item;
  while (std::getline(body, item, ',')) {
    item = trim(item);
    if (item.empty()) throw configuration_error(name + ": empty list entry");
    items.push_back(item);
  }
  return items;
}

inline std::vector<double> parse_double_list(const std::string& raw, const std::string& name) {
  std::vector<double> out;
  for (const auto& item : split_list(raw, name)) out.push_back(parse_double(item, name));
  return out;
}

inline std::vector<int> parse_int_list(const std::string& raw, const std::string& name) {
  std::vector<int> out;
  for (const auto& item : split_list(raw, name)) out.push_back(parse_integer<int>(item, name));
  return out;
}

inline std::string parse_string(const std::string& raw) {
  std::string s = trim(raw);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

}  // namespace detail

/// Parses config text. Missing keys keep their defaults.
inline RunConfig parse_config(const std::string& text) {
  std::stringstream cleaned;
  {
    std::stringstream in(text);
    std::string line;
    while (std::getline(in, line)) cleaned << detail::strip_comment(line) << '\n';
  }
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(cleaned, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw configuration_error(std::string("config syntax error: ") + e.message() + " (line " +
                              std::to_string(e.line()) + ")");
  }

  RunConfig cfg;
  std::optional<double> t_min, t_max;
  std::optional<int> t_steps;
  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) throw configuration_error("key '" + section + "' must live inside a [section]");
    for (const auto& [key, node] : body) {
      const std::string raw = node.data();
      const std::string name = detail::where(section, key);
      auto number = [&] { return detail::parse_double(raw, name); };
      auto integer = [&] { return detail::parse_integer<int>(raw, name); };
      bool known = true;
      if (section == "thermal") {
        if (key == "beta") cfg.thermal.beta = number();
        else if (key == "mass") cfg.thermal.mass = number();
        else if (key == "lambda_order") cfg.thermal.lambda_order = integer();
        else known = false;
      } else if (section == "K1" || section == "K2" || section == "K3") {
        FunctionalBlock& b = section == "K1" ? cfg.k1 : section == "K2" ? cfg.k2 : cfg.k3;
        if (key == "coeffs") b.coeffs = detail::parse_double_list(raw, name);
        else if (key == "amplitude") b.amplitude = number();
        else if (key == "width") b.width = number();
        else known = false;
      } else if (section == "grid") {
        if (key == "intervals") cfg.grid.intervals = detail::parse_integer<std::size_t>(raw, name);
        else if (key == "half_width") cfg.grid.half_width = number();
        else known = false;
      } else if (section == "time") {
        if (key == "t") cfg.times = detail::parse_double_list(raw, name);
        else if (key == "t_min") t_min = number();
        else if (key == "t_max") t_max = number();
        else if (key == "t_steps") t_steps = integer();
        else known = false;
      } else if (section == "cutoff") {
        if (key == "n_max") cfg.cutoff.n_max = integer();
        else if (key == "tolerance") cfg.cutoff.tolerance = number();
        else if (key == "ramp") {
          const std::string r = detail::parse_string(raw);
          if (r == "smoothstep") cfg.cutoff.ramp = RampKind::smoothstep;
          else if (r == "sharp") cfg.cutoff.ramp = RampKind::sharp;
          else throw configuration_error(name + ": ramp must be \"smoothstep\" or \"sharp\"");
        } else known = false;
      } else if (section == "ness") {
        if (key == "t_min") cfg.ness.t_min = number();
        else if (key == "t_max") cfg.ness.t_max = number();
        else if (key == "samples") cfg.ness.samples = integer();
        else known = false;
      } else if (section == "oracle") {
        if (key == "dim") {
          const std::string s = detail::trim(raw);
          cfg.oracle.dims = (!s.empty() && s.front() == '[') ? detail::parse_int_list(raw, name)
                                                             : std::vector<int>{integer()};
        } else if (key == "trials") cfg.oracle.trials = integer();
        else if (key == "seed") cfg.oracle.seed = detail::parse_integer<std::uint64_t>(raw, name);
        else if (key == "t_min") cfg.oracle.t_min = number();
        else if (key == "t_max") cfg.oracle.t_max = number();
        else if (key == "beta_min") cfg.oracle.beta_min = number();
        else if (key == "beta_max") cfg.oracle.beta_max = number();
        else if (key == "tolerance") cfg.oracle.tolerance = number();
        else known = false;
      } else if (section == "balance") {
        if (key == "tolerance") cfg.balance.tolerance = number();
        else known = false;
      } else {
        throw configuration_error("unknown section [" + section + "]");
      }
      if (!known) throw configuration_error("unknown key '" + name + "'");
    }
  }
  if (t_min || t_max || t_steps) {
    if (!(t_min && t_max && t_steps)) throw configuration_error("time: t_min, t_max and t_steps must be given together");
    if (*t_steps < 1) throw configuration_error("time.t_steps must be >= 1");
    cfg.times.clear();
    for (int i = 0; i <= *t_steps; ++i) cfg.times.push_back(*t_min + (*t_max - *t_min) * i / *t_steps);
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw configuration_error("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

inline void RunConfig::validate() const {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw configuration_error(msg);
  };
  require(std::isfinite(thermal.beta) && thermal.beta > 0.0, "thermal.beta must be > 0");
  require(std::isfinite(thermal.mass) && thermal.mass > 0.0, "thermal.mass must be > 0 (massless case is not supported)");
  require(thermal.lambda_order >= 2, "thermal.lambda_order must be >= 2");
  const FunctionalBlock* blocks[] = {&k1, &k2, &k3};
  for (int i = 0; i < 3; ++i) {
    const FunctionalBlock& b = *blocks[i];
    const std::string tag = "K" + std::to_string(i + 1);
    require(!b.coeffs.empty() && b.coeffs.size() <= kMaxFunctionalOrder, tag + ".coeffs must hold 1 to 3 values");
    require(std::all_of(b.coeffs.begin(), b.coeffs.end(), [](double c) { return std::isfinite(c); }),
            tag + ".coeffs must be finite");
    require(std::isfinite(b.amplitude), tag + ".amplitude must be finite");
    require(std::isfinite(b.width) && b.width > 0.0, tag + ".width must be > 0");
  }
  require(k1.coeffs.size() == k2.coeffs.size() && k1.coeffs.size() == k3.coeffs.size(),
          "K1, K2, K3 must have the same number of coeffs");
  require(k1.amplitude == k2.amplitude && k1.amplitude == k3.amplitude && k1.width == k2.width &&
              k1.width == k3.width,
          "K1, K2, K3 must share the same profile (amplitude, width)");
  require(grid.intervals >= 16 && grid.intervals % 2 == 0, "grid.intervals must be an even number >= 16");
  require(std::isfinite(grid.half_width) && grid.half_width >= 0.0, "grid.half_width must be >= 0 (0 selects the default)");
  require(!times.empty(), "time: at least one t is required");
  require(std::all_of(times.begin(), times.end(), [](double t) { return std::isfinite(t); }), "time values must be finite");
  require(cutoff.n_max >= 1, "cutoff.n_max must be >= 1");
  require(cutoff.tolerance > 0.0, "cutoff.tolerance must be > 0");
  require(ness.t_min > 0.0 && ness.t_max > ness.t_min, "ness: need 0 < t_min < t_max");
  require(ness.samples >= 2, "ness.samples must be >= 2");
  require(!oracle.dims.empty(), "oracle.dim must list at least one dimension");
  for (int d : oracle.dims) require(d >= 2 && d <= 16, "oracle.dim entries must be in [2, 16]");
  require(oracle.trials >= 1, "oracle.trials must be >= 1");
  require(oracle.t_max >= oracle.t_min, "oracle: t_max must be >= t_min");
  require(oracle.beta_min > 0.0 && oracle.beta_max >= oracle.beta_min, "oracle: need 0 < beta_min <= beta_max");
  require(oracle.tolerance > 0.0, "oracle.tolerance must be > 0");
  require(balance.tolerance > 0.0, "balance.tolerance must be > 0");
}

}  // namespace kmsent::cli
