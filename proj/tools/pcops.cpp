// pcops: run an experiment config and verify the requested claims.
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pcops/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Run operator-splitting experiments and check their convergence claims"};
  app.set_version_flag("--version", pcops::build_identifier());
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  std::int64_t seed = -1;
  bool quiet = false;

  CLI::App* run = app.add_subcommand("run", "Run a JSON experiment config");
  run->add_option("config", config, "Experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory (overrides the config and $PCOPS_OUT)");
  run->add_option("--seed", seed, "Override the run seed")->check(CLI::NonNegativeNumber);
  run->add_flag("-q,--quiet", quiet, "Only print errors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : pcops::exit_status::kConfigError;
  }

  pcops::RunOptions options;
  if (!out_dir.empty()) options.out_dir = out_dir;
  if (seed >= 0) options.seed = static_cast<std::uint64_t>(seed);
  options.quiet = quiet;
  return pcops::run_experiment_file(config, options);
}
