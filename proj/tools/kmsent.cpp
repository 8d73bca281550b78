// kmsent: command-line front end. Usage:
//   kmsent <subcommand> [--config FILE] [--out DIR] [--seed N] [--quiet]

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kmsent/cli/app.hpp"
#include "kmsent/cli/config.hpp"
#include "kmsent/errors.hpp"

int main(int argc, char** argv) {
  using namespace kmsent::cli;

  CLI::App app{"Second-order relative entropy and entropy production between perturbed KMS states"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool quiet = false;

  for (const auto& name : subcommands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "Config file (TOML subset)")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--seed", seed, "Seed for randomized subcommands (overrides [oracle] seed)");
    sub->add_flag("--quiet", quiet, "Suppress progress messages");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kValidationError;
  }

  const std::string subcommand = app.get_subcommands().front()->get_name();
  RunOptions opts;
  opts.out_dir = out_dir;
  opts.quiet = quiet;
  if (app.get_subcommands().front()->count("--seed") > 0) opts.seed = seed;

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
  } catch (const kmsent::configuration_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationError;
  }
  return run(subcommand, cfg, opts, std::cerr);
}
