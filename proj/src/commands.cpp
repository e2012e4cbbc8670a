#include "descwave/commands.hpp"

#include <chrono>
#include <iostream>

#include "descwave/builtin.hpp"
#include "descwave/hypotheses.hpp"
#include "descwave/problem_io.hpp"
#include "descwave/solver.hpp"

namespace descwave::commands {

namespace {

using io::json;
using Clock = std::chrono::steady_clock;

io::ProblemSpec load(const Options& opts) {
  io::ProblemSpec spec;
  if (!opts.example.empty()) {
    spec = io::parse_spec(builtin::example_spec(opts.example));
  } else if (!opts.spec_path.empty()) {
    spec = io::load_spec(opts.spec_path);
  } else {
    throw Error(ErrorKind::input, "one of --spec or --example is required");
  }
  if (opts.tol) {
    if (!(*opts.tol > 0.0)) throw Error(ErrorKind::input, "--tol must be positive");
    spec.problem.tol.residual = *opts.tol;
  }
  if (opts.halvings) {
    if (*opts.halvings < 0) throw Error(ErrorKind::input, "--halvings must be non-negative");
    spec.halvings = *opts.halvings;
  }
  return spec;
}

std::filesystem::path out_dir(const Options& opts) { return opts.out_dir.value_or("."); }

json provenance(const io::ProblemSpec& spec, const char* command, const Options& opts, Clock::time_point t0) {
  json p = {{"spec_hash", io::spec_hash(io::to_json(spec))}, {"tool_version", DESCWAVE_VERSION}, {"command", command}};
  if (opts.timing) {
    p["timing"] = {{"elapsed_ms", std::chrono::duration<double, std::milli>(Clock::now() - t0).count()}};
  }
  return p;
}

json base_report() {
  return {{"schema_version", io::kSchemaVersion}, {"validation", nullptr}, {"residuals", nullptr}, {"sweep", nullptr}};
}

void print_validation(const hypotheses::ValidationReport& report, std::ostream& out) {
  for (const hypotheses::CheckResult& c : report.checks) {
    if (c.pass) continue;
    out << (c.severity == hypotheses::Severity::warning ? "warning: " : "failed: ") << c.name << " (" << c.detail
        << ")\n";
  }
}

template <typename Body>
int guarded(Body body, std::ostream& err) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input:
    case ErrorKind::degenerate_boundary:
      return 2;
    case ErrorKind::numerical_failure:
      return 3;
    default:
      return 1;
  }
}

int run_check(const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const auto t0 = Clock::now();
        const io::ProblemSpec spec = load(opts);
        const hypotheses::ValidationReport report = hypotheses::validate_all(spec.problem);
        json doc = base_report();
        doc["validation"] = io::to_json(report);
        doc["provenance"] = provenance(spec, "check", opts, t0);
        io::write_atomic(out_dir(opts) / "report.json", doc.dump(2) + "\n");
        print_validation(report, out);
        const bool pass = report.overall_pass();
        out << "check: " << (pass ? "PASS" : "FAIL") << " (" << report.checks.size() << " checks)\n";
        return pass ? 0 : 1;
      },
      err);
}

int run_solve(const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const auto t0 = Clock::now();
        const io::ProblemSpec spec = load(opts);
        const MixedProblem& p = spec.problem;
        const hypotheses::ValidationReport report = hypotheses::validate_all(p);
        json doc = base_report();
        doc["validation"] = io::to_json(report);
        print_validation(report, out);
        if (!report.overall_pass() && !opts.force) {
          doc["provenance"] = provenance(spec, "solve", opts, t0);
          io::write_atomic(out_dir(opts) / "report.json", doc.dump(2) + "\n");
          out << "solve: hypotheses not met; rerun with --force to assemble anyway\n";
          return 1;
        }
        const solver::DiscreteSolution sol = solver::solve(p);
        if (sol.trivial) out << "warning: D is nilpotent; emitting the trivial solution\n";
        const solver::SchemeResidual res = solver::scheme_residual(sol, p);
        const double threshold = solver::residual_threshold(p);
        doc["residuals"] = io::to_json(res, threshold);
        doc["trivial"] = sol.trivial;
        doc["provenance"] = provenance(spec, "solve", opts, t0);
        io::write_atomic(out_dir(opts) / "solution.csv", io::solution_csv(sol.U, sol.N, sol.M));
        io::write_atomic(out_dir(opts) / "report.json", doc.dump(2) + "\n");
        const bool pass = res.max() <= threshold;
        out << "residuals: interior " << res.interior << ", boundary0 " << res.boundary0 << ", boundaryN "
            << res.boundaryN << ", init0 " << res.init0 << ", init1 " << res.init1 << " (threshold " << threshold
            << ")\n";
        out << "solve: " << (pass ? "PASS" : "FAIL") << '\n';
        return pass ? 0 : 1;
      },
      err);
}

int run_sweep(const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const auto t0 = Clock::now();
        const io::ProblemSpec spec = load(opts);
        const solver::SweepResult sweep = solver::stability_sweep(spec.problem, spec.halvings);
        json doc = base_report();
        doc["sweep"] = io::to_json(sweep);
        doc["provenance"] = provenance(spec, "sweep", opts, t0);
        const std::filesystem::path dir = out_dir(opts);
        io::write_atomic(dir / "sweep.csv", io::sweep_csv(sweep));
        io::write_atomic(dir / "sweep.gp", io::sweep_plot_script(sweep, "stability sweep"));
        io::write_atomic(dir / "report.json", doc.dump(2) + "\n");
        for (const solver::SweepRow& r : sweep.rows) {
          out << "k = " << r.k << ", M = " << r.M << ": ";
          if (r.error) {
            out << "error: " << *r.error << '\n';
          } else {
            out << "max norm " << r.max_norm << '\n';
          }
        }
        out << "sweep: " << (sweep.bounded ? "bounded" : "NOT bounded") << '\n';
        return sweep.bounded ? 0 : 1;
      },
      err);
}

int run_example(const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        if (opts.example.empty()) {
          for (const std::string& name : builtin::example_names()) out << name << '\n';
          return 0;
        }
        const std::string text = builtin::example_spec(opts.example).dump(2) + "\n";
        if (opts.out_dir) {
          const std::filesystem::path path = *opts.out_dir / (opts.example + ".json");
          io::write_atomic(path, text);
          out << "wrote " << path.string() << '\n';
        } else {
          out << text;
        }
        return 0;
      },
      err);
}

}  // namespace descwave::commands
