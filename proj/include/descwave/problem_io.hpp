#pragma once

// JSON problem specifications, run reports and the CSV / plot outputs.
//
// Spec layout:
//   { "m": 3, "N": 8, "k": 0.0625, "T": 1, "alpha": 2, "beta": 1,
//     "E": [[[re, im], ...], ...], "A": ..., "A1": ..., "A2": ..., "B1": ..., "B2": ...,
//     "F": <grid>, "G": <grid>,
//     "options": { "gamma": "auto" | [re, im], "rank_tol": 1e-12,
//                  "residual_tol": 1e-8, "eps_growth": 0.1, "halvings": 5 } }
// A grid is either an (N+1) x m array of [re, im] or a generator object:
//   { "generator": "zero" }
//   { "generator": "constant", "value": [[re, im], ...] }
//   { "generator": "sin", "components": [{ "amplitude": [re, im], "frequency": n }, ...],
//     "complete_boundary": true }
//   { "generator": "sl_mode", "mode": l, "amplitude": [[re, im], ...] }
// "sin" samples a sin(n pi x); with complete_boundary the values at i = 0, N
// are replaced by the Sturm-Liouville boundary extension of the interior.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "descwave/hypotheses.hpp"
#include "descwave/problem.hpp"
#include "descwave/solver.hpp"

namespace descwave::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct ProblemSpec {
  MixedProblem problem;
  json F_source;
  json G_source;
  int halvings = 5;
};

// Default residual tolerance: DESCWAVE_RESIDUAL_TOL when set, else 1e-8.
double default_residual_tol();

// Throws ErrorKind::input on any malformed or inconsistent field.
ProblemSpec parse_spec(const json& doc);
ProblemSpec load_spec(const std::filesystem::path& path);
json to_json(const ProblemSpec& spec);

VectorGrid make_grid(const json& source, const MixedProblem& shape);

json complex_to_json(Complex z);
json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const json& j, Eigen::Index m, const std::string& name);

json to_json(const hypotheses::ValidationReport& report);
json to_json(const solver::SchemeResidual& res, double threshold);
json to_json(const solver::SweepResult& sweep);

// FNV-1a 64 of the canonical dump, as 16 hex digits.
std::string spec_hash(const json& spec);

std::string solution_csv(const ComplexMatrix& U, int N, int M);
std::string sweep_csv(const solver::SweepResult& sweep);
// Standalone gnuplot script of max_norm against k on log axes.
std::string sweep_plot_script(const solver::SweepResult& sweep, const std::string& title);

// Write to a temporary sibling, then rename over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace descwave::io
