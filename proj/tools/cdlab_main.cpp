#include <CLI11.hpp>

#include "cdlab/cli_io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"convection-diffusion solver laboratory"};
  app.require_subcommand(1);

  cdlab::CliOptions opts;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("config", opts.config_path, "problem configuration file")->required();
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "seed for randomized checks");
    cmd->add_flag("--quiet", opts.quiet, "suppress console output");
  };
  CLI::App* solve = app.add_subcommand("solve", "run the configured time integration");
  CLI::App* analyze = app.add_subcommand("analyze", "emit operator and scheme certificates");
  CLI::App* converge = app.add_subcommand("converge", "run a convergence ladder");
  add_common(solve);
  add_common(analyze);
  add_common(converge);

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) return cdlab::cmd_solve(opts);
  if (analyze->parsed()) return cdlab::cmd_analyze(opts);
  return cdlab::cmd_converge(opts);
}
