#include <iostream>

#include "CLI11.hpp"

#include "descwave/commands.hpp"

int main(int argc, char** argv) {
  using descwave::commands::Options;

  CLI::App app{"descwave: stable discrete solutions of singular coupled wave systems"};
  app.set_version_flag("--version", DESCWAVE_VERSION);
  app.require_subcommand(1);

  Options opts;
  std::string out;
  int halvings = -1;
  double tol = 0.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--spec", opts.spec_path, "problem specification (JSON)");
    cmd->add_option("--example", opts.example, "use a built-in example instead of --spec");
    cmd->add_option("--out", out, "output directory");
    cmd->add_option("--tol", tol, "residual tolerance")->check(CLI::PositiveNumber);
  };

  CLI::App* check = app.add_subcommand("check", "validate every hypothesis of the construction");
  add_common(check);
  CLI::App* solve = app.add_subcommand("solve", "assemble the separated solution and its residuals");
  add_common(solve);
  solve->add_flag("--force", opts.force, "assemble even when hypotheses fail");
  CLI::App* sweep = app.add_subcommand("sweep", "halve k repeatedly and tabulate max |U|");
  add_common(sweep);
  sweep->add_option("--halvings", halvings, "number of k-halvings")->check(CLI::NonNegativeNumber);
  CLI::App* example = app.add_subcommand("example", "print or write a built-in example spec");
  example->add_option("--example,name", opts.example, "example name (omit to list)");
  example->add_option("--out", out, "write NAME.json into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!out.empty()) opts.out_dir = out;
  if (halvings >= 0) opts.halvings = halvings;
  if (tol > 0.0) opts.tol = tol;

  if (check->parsed()) return descwave::commands::run_check(opts, std::cout, std::cerr);
  if (solve->parsed()) return descwave::commands::run_solve(opts, std::cout, std::cerr);
  if (sweep->parsed()) return descwave::commands::run_sweep(opts, std::cout, std::cerr);
  return descwave::commands::run_example(opts, std::cout, std::cerr);
}
