#pragma once

// Subcommand dispatch: each subcommand composes library calls into a table,
// writes <out>/<subcommand>.csv and .json, and maps failures to exit codes.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kmsent/adiabatic.hpp"
#include "kmsent/cli/config.hpp"
#include "kmsent/entropy.hpp"
#include "kmsent/errors.hpp"
#include "kmsent/findim/random.hpp"
#include "kmsent/findim/states.hpp"
#include "kmsent/findim/system.hpp"
#include "kmsent/spectral.hpp"
#include "kmsent/thermal.hpp"

namespace kmsent::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kSuccess = 0, kValidationError = 2, kToleranceFailure = 3 };

/// One output table. Cells are numbers or short strings; numbers print with
/// %.17g so repeated runs are byte-identical.
struct Table {
  struct Cell {
    std::optional<double> number;
    std::string text;
    Cell(double v) : number(v) {}
    Cell(int v) : number(static_cast<double>(v)) {}
    Cell(std::size_t v) : number(static_cast<double>(v)) {}
    Cell(std::string s) : text(std::move(s)) {}
    Cell(const char* s) : text(s) {}
  };

  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != header.size()) throw std::logic_error("table row width does not match header");
    rows.push_back(std::move(row));
  }
};

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << csv_field(table.header[i]);
  out << "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << (row[i].number ? format_number(*row[i].number) : csv_field(row[i].text));
    out << "\r\n";
  }
}

inline nlohmann::json table_json(const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i].number) {
        const double v = *row[i].number;
        r[table.header[i]] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(format_number(v));
      } else {
        r[table.header[i]] = row[i].text;
      }
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Raised by a subcommand when a computed quantity misses its tolerance.
class tolerance_failure : public std::runtime_error {
 public:
  tolerance_failure(std::string quantity, const std::string& detail)
      : std::runtime_error(quantity + ": " + detail), quantity_(std::move(quantity)) {}
  const std::string& quantity() const noexcept { return quantity_; }

 private:
  std::string quantity_;
};

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

struct RunResult {
  Table table;
  nlohmann::json metadata = nlohmann::json::object();
  std::optional<tolerance_failure> failure;
};

namespace detail {

inline nlohmann::json config_json(const RunConfig& cfg) {
  auto functional = [](const FunctionalBlock& b) {
    return nlohmann::json{{"coeffs", b.coeffs}, {"amplitude", b.amplitude}, {"width", b.width}};
  };
  return {
      {"thermal", {{"beta", cfg.thermal.beta}, {"mass", cfg.thermal.mass}, {"lambda_order", cfg.thermal.lambda_order}}},
      {"K1", functional(cfg.k1)},
      {"K2", functional(cfg.k2)},
      {"K3", functional(cfg.k3)},
      {"time", {{"t", cfg.times}}},
  };
}

inline nlohmann::json grid_json(const SpectralModel& model) {
  return {{"half_width", model.settings().half_width},
          {"intervals", model.settings().intervals},
          {"step", model.rho().step()},
          {"resolution_tol", model.settings().resolution_tol}};
}

inline SpectralModel build_model(const RunConfig& cfg) {
  return SpectralModel(cfg.params(), cfg.profile(), cfg.k1.coeffs.size(), cfg.grid);
}

inline RunResult run_relent(const RunConfig& cfg) {
  const SpectralModel model = build_model(cfg);
  const auto k1 = cfg.functional(1), k2 = cfg.functional(2), k3 = cfg.functional(3);
  RunResult out;
  out.table.header = {"t", "static", "dynamic", "total"};
  for (std::size_t l = 1; l <= k1.orders(); ++l) out.table.header.push_back("order_" + std::to_string(l));
  for (double t : cfg.times) {
    const EntropyReport r = rel_entropy_total(model, k1, k2, k3, t);
    std::vector<Table::Cell> row{t, r.static_part, r.dynamic_part, r.total};
    for (double v : r.per_order) row.emplace_back(v);
    out.table.add(std::move(row));
    if (r.total < -1e-10 && !out.failure)
      out.failure.emplace("total", "relative entropy " + format_number(r.total) + " < -1e-10 at t = " + format_number(t));
  }
  out.metadata["grid"] = grid_json(model);
  out.metadata["tolerances"] = {{"positivity", 1e-10}};
  return out;
}

inline RunResult run_entprod(const RunConfig& cfg) {
  const SpectralModel model = build_model(cfg);
  const auto k1 = cfg.functional(1), k3 = cfg.functional(3);
  RunResult out;
  out.table.header = {"t", "entropy_production"};
  for (double t : cfg.times) out.table.add({t, entropy_production(model, k1, k3, t)});
  out.metadata["grid"] = grid_json(model);
  out.metadata["note"] = "K2 = 0 (commutator form)";
  return out;
}

inline RunResult run_balance(const RunConfig& cfg) {
  const SpectralModel model = build_model(cfg);
  const auto k1 = cfg.functional(1), k3 = cfg.functional(3);
  RunResult out;
  out.table.header = {"t", "S_t", "S_0", "integral_E", "residual"};
  for (double t : cfg.times) {
    const BalanceTerms b = entropy_balance(model, k1, k3, t);
    const double residual = b.residual();
    out.table.add({t, b.s_t, b.s_0, b.integral, residual});
    if (residual > cfg.balance.tolerance && !out.failure)
      out.failure.emplace("balance residual", format_number(residual) + " > " + format_number(cfg.balance.tolerance) +
                                                  " at t = " + format_number(t));
  }
  out.metadata["grid"] = grid_json(model);
  out.metadata["tolerances"] = {{"balance", cfg.balance.tolerance}};
  return out;
}

inline RunResult run_density(const RunConfig& cfg) {
  const auto params = cfg.params();
  const auto k1 = cfg.functional(1), k2 = cfg.functional(2), k3 = cfg.functional(3);
  RunResult out;
  out.table.header = {"t", "static_density", "dynamic_density", "total_density"};
  for (double t : cfg.times) {
    const DensityParts d = rel_entropy_density_parts(params, k1, k2, k3, t);
    out.table.add({t, d.static_part, d.dynamic_part, d.total()});
    if (d.total() < -1e-10 && !out.failure)
      out.failure.emplace("total_density", format_number(d.total()) + " < -1e-10 at t = " + format_number(t));
  }
  return out;
}

inline RunResult run_vanhove(const RunConfig& cfg) {
  const auto k1 = cfg.functional(1), k2 = cfg.functional(2), k3 = cfg.functional(3);
  const double t = cfg.times.front();
  const DensityReport report = vanhove_density_series(cfg.params(), k1, k2, k3, t, cfg.cutoff.n_max, cfg.cutoff.ramp);
  RunResult out;
  out.table.header = {"n", "I_h", "density"};
  for (std::size_t i = 0; i < report.n_values.size(); ++i)
    out.table.add({report.n_values[i], report.volumes[i], report.densities[i]});
  const double reference = report.density_mode_value;
  const double gap = std::abs(report.densities.back() - reference);
  const double relative_gap = reference != 0.0 ? gap / std::abs(reference) : gap;
  out.metadata["t"] = t;
  out.metadata["density_mode_value"] = reference;
  out.metadata["limit_estimate"] = report.limit_estimate;
  out.metadata["relative_gap"] = relative_gap;
  out.metadata["ramp"] = cfg.cutoff.ramp == RampKind::smoothstep ? "smoothstep" : "sharp";
  out.metadata["tolerances"] = {{"relative_gap", cfg.cutoff.tolerance}};
  if (relative_gap > cfg.cutoff.tolerance)
    out.failure.emplace("vanhove relative gap", format_number(relative_gap) + " > " +
                                                    format_number(cfg.cutoff.tolerance) + " at n = " +
                                                    std::to_string(cfg.cutoff.n_max));
  return out;
}

inline RunResult run_ness(const RunConfig& cfg) {
  const auto k1 = cfg.functional(1), k3 = cfg.functional(3);
  const NessReport report = ness_series(cfg.params(), k1, k3, cfg.ness.t_min, cfg.ness.t_max,
                                        static_cast<std::size_t>(cfg.ness.samples));
  RunResult out;
  out.table.header = {"t", "e_t", "e_t_times_t"};
  for (std::size_t i = 0; i < report.t_values.size(); ++i)
    out.table.add({report.t_values[i], report.e_values[i], report.e_times_t[i]});
  out.metadata["bound"] = report.bound;
  out.metadata["sup_e_t_times_t"] = report.sup_e_times_t;
  out.metadata["fit"] = {{"slope", report.fit.slope}, {"intercept", report.fit.intercept}, {"residual", report.fit.residual}};
  if (report.sup_e_times_t > report.bound)
    out.failure.emplace("e_t_times_t", "sup " + format_number(report.sup_e_times_t) + " exceeds the bound " +
                                           format_number(report.bound));
  return out;
}

inline RunResult run_oracle(const RunConfig& cfg, std::uint64_t seed) {
  const OracleBlock& o = cfg.oracle;
  findim::Rng rng(seed);
  RunResult out;
  out.table.header = {"trial", "dim", "beta", "t", "formula", "exact", "abs_diff", "balance_residual", "pass"};
  double worst_diff = 0.0, worst_balance = 0.0;
  for (int trial = 0; trial < o.trials; ++trial) {
    const int dim = o.dims[static_cast<std::size_t>(trial) % o.dims.size()];
    const double beta = findim::uniform(rng, o.beta_min, o.beta_max);
    const double t = findim::uniform(rng, o.t_min, o.t_max);
    const findim::FiniteSystem sys = findim::random_system(dim, beta, rng);
    const double formula = findim::generalized_formula_findim(sys, t);
    const double exact = findim::relative_entropy_evolved_exact(sys, t);
    const double diff = std::abs(formula - exact);
    const double balance = findim::entropy_balance_residual_findim(sys, t);
    const bool pass = diff <= o.tolerance && balance <= o.tolerance;
    worst_diff = std::max(worst_diff, diff);
    worst_balance = std::max(worst_balance, balance);
    out.table.add({trial, dim, beta, t, formula, exact, diff, balance, pass ? "true" : "false"});
    if (!pass && !out.failure)
      out.failure.emplace(diff > o.tolerance ? "oracle abs_diff" : "oracle balance_residual",
                          "trial " + std::to_string(trial) + " exceeds " + format_number(o.tolerance));
  }
  out.metadata["seed"] = seed;
  out.metadata["worst_abs_diff"] = worst_diff;
  out.metadata["worst_balance_residual"] = worst_balance;
  out.metadata["tolerances"] = {{"abs_diff", o.tolerance}, {"balance_residual", o.tolerance}};
  return out;
}

inline RunResult run_kmscheck(const RunConfig& cfg, std::uint64_t seed) {
  constexpr double tol = 1e-11;
  const auto params = cfg.params();
  findim::Rng rng(seed);
  RunResult out;
  out.table.header = {"kind", "sample", "residual"};
  double worst_fourier = 0.0, worst_matrix = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double p0 = 0.0;
    while (p0 == 0.0) p0 = findim::uniform(rng, -10.0, 10.0);
    const double r = detailed_balance_residual(p0, 0.0, params);
    worst_fourier = std::max(worst_fourier, r);
    out.table.add({"fourier", i, r});
  }
  const int dim = 4;
  const findim::Matrix h = findim::random_hermitian(dim, rng);
  for (int i = 0; i < 50; ++i) {
    findim::Matrix a = findim::random_matrix(dim, rng);
    findim::Matrix b = findim::random_matrix(dim, rng);
    a /= a.norm();
    b /= b.norm();
    const double r = findim::kms_residual(h, params.beta(), a, b);
    worst_matrix = std::max(worst_matrix, r);
    out.table.add({"findim", i, r});
  }
  out.metadata["seed"] = seed;
  out.metadata["worst_fourier_residual"] = worst_fourier;
  out.metadata["worst_findim_residual"] = worst_matrix;
  out.metadata["tolerances"] = {{"residual", tol}};
  if (worst_fourier > tol) out.failure.emplace("fourier detailed-balance residual", format_number(worst_fourier) + " > 1e-11");
  else if (worst_matrix > tol) out.failure.emplace("findim KMS residual", format_number(worst_matrix) + " > 1e-11");
  return out;
}

}  // namespace detail

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"relent", "entprod", "balance", "density",
                                              "vanhove", "ness", "oracle", "kmscheck"};
  return names;
}

/// Runs one subcommand; returns the process exit status. Diagnostics go to `err`.
inline int run(const std::string& subcommand, const RunConfig& cfg, const RunOptions& opts,
               std::ostream& err = std::cerr) {
  namespace fs = std::filesystem;
  const fs::path csv_path = opts.out_dir / (subcommand + ".csv");
  const fs::path json_path = opts.out_dir / (subcommand + ".json");
  auto cleanup = [&] {
    std::error_code ec;
    fs::remove(csv_path, ec);
    fs::remove(json_path, ec);
  };

  RunResult result;
  try {
    cfg.validate();
    const std::uint64_t seed = opts.seed.value_or(cfg.oracle.seed);
    if (subcommand == "relent") result = detail::run_relent(cfg);
    else if (subcommand == "entprod") result = detail::run_entprod(cfg);
    else if (subcommand == "balance") result = detail::run_balance(cfg);
    else if (subcommand == "density") result = detail::run_density(cfg);
    else if (subcommand == "vanhove") result = detail::run_vanhove(cfg);
    else if (subcommand == "ness") result = detail::run_ness(cfg);
    else if (subcommand == "oracle") result = detail::run_oracle(cfg, seed);
    else if (subcommand == "kmscheck") result = detail::run_kmscheck(cfg, seed);
    else throw configuration_error("unknown subcommand '" + subcommand + "'");
  } catch (const configuration_error& e) {
    cleanup();
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const unsupported_order_error& e) {
    cleanup();
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const domain_error& e) {
    cleanup();
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const resolution_error& e) {
    cleanup();
    err << "tolerance failure: grid resolution: " << e.what() << '\n';
    return kToleranceFailure;
  } catch (const convergence_error& e) {
    cleanup();
    err << "tolerance failure: convergence: " << e.what() << '\n';
    return kToleranceFailure;
  }

  if (result.failure) {
    cleanup();
    err << "tolerance failure: " << result.failure->what() << '\n';
    return kToleranceFailure;
  }

  try {
    fs::create_directories(opts.out_dir);
    {
      std::ofstream csv(csv_path, std::ios::binary);
      write_csv(result.table, csv);
      if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
    }
    nlohmann::json doc = result.metadata;
    doc["subcommand"] = subcommand;
    doc["version"] = kVersion;
    doc["config"] = detail::config_json(cfg);
    doc["columns"] = result.table.header;
    doc["rows"] = table_json(result.table);
    {
      std::ofstream json(json_path, std::ios::binary);
      json << doc.dump(2) << '\n';
      if (!json) throw std::runtime_error("cannot write " + json_path.string());
    }
  } catch (const std::exception& e) {
    cleanup();
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
  if (!opts.quiet) err << subcommand << ": wrote " << csv_path.string() << " (" << result.table.rows.size() << " rows)\n";
  return kSuccess;
}

}  // namespace kmsent::cli
