#pragma once

// The check / solve / sweep / example commands behind the CLI. Each returns
// the process exit code: 0 pass, 1 hypothesis or residual failure, 2 input
// error, 3 numerical failure.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "descwave/error.hpp"

namespace descwave::commands {

struct Options {
  std::string spec_path;
  std::string example;
  std::optional<std::filesystem::path> out_dir;
  bool force = false;
  std::optional<int> halvings;
  std::optional<double> tol;
  bool timing = true;  // include provenance.timing in reports
};

int exit_code(ErrorKind kind);

int run_check(const Options& opts, std::ostream& out, std::ostream& err);
int run_solve(const Options& opts, std::ostream& out, std::ostream& err);
int run_sweep(const Options& opts, std::ostream& out, std::ostream& err);
int run_example(const Options& opts, std::ostream& out, std::ostream& err);

}  // namespace descwave::commands
