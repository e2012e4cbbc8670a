#include "descwave/problem_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "descwave/error.hpp"
#include "descwave/sturm.hpp"

namespace descwave::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::input, "spec: " + what); }

const json& field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) bad(std::string("missing field '") + name + "'");
  return *it;
}

double number(const json& doc, const char* name) {
  const json& v = field(doc, name);
  if (!v.is_number()) bad(std::string("'") + name + "' must be a number");
  return v.get<double>();
}

int integer(const json& doc, const char* name) {
  const json& v = field(doc, name);
  if (!v.is_number_integer()) bad(std::string("'") + name + "' must be an integer");
  return v.get<int>();
}

Complex complex_from_json(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  bad(where + ": expected [re, im]");
}

ComplexVector vector_from_json(const json& j, Eigen::Index m, const std::string& where) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != m) bad(where + ": expected " + std::to_string(m) + " entries");
  ComplexVector v(m);
  for (Eigen::Index q = 0; q < m; ++q) v(q) = complex_from_json(j[static_cast<std::size_t>(q)], where);
  return v;
}

std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Replace the end values of every component by the SL boundary extension.
void complete_boundary(VectorGrid& g, const MixedProblem& p) {
  const sturm::SLProblem sl{p.N, p.alpha, p.beta};
  sl.validate();
  const auto N = static_cast<std::size_t>(p.N);
  for (Eigen::Index q = 0; q < p.m(); ++q) {
    g[0](q) = Complex(sturm::extend_left(sl, g[1](q).real()), sturm::extend_left(sl, g[1](q).imag()));
    g[N](q) = Complex(sturm::extend_right(sl, g[N - 1](q).real()), sturm::extend_right(sl, g[N - 1](q).imag()));
  }
}

}  // namespace

double default_residual_tol() {
  if (const char* env = std::getenv("DESCWAVE_RESIDUAL_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && std::isfinite(v) && v > 0.0) return v;
    throw Error(ErrorKind::input, "DESCWAVE_RESIDUAL_TOL must be a positive number");
  }
  return 1e-8;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const ComplexMatrix& a) {
  json out = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(complex_to_json(a(i, j)));
    out.push_back(row);
  }
  return out;
}

ComplexMatrix matrix_from_json(const json& j, Eigen::Index m, const std::string& name) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != m) bad(name + " must have " + std::to_string(m) + " rows");
  ComplexMatrix a(m, m);
  for (Eigen::Index i = 0; i < m; ++i) a.row(i) = vector_from_json(j[static_cast<std::size_t>(i)], m, name).transpose();
  return a;
}

VectorGrid make_grid(const json& source, const MixedProblem& shape) {
  const int N = shape.N;
  const Eigen::Index m = shape.m();
  VectorGrid g(static_cast<std::size_t>(N + 1), ComplexVector::Zero(m));

  if (source.is_array()) {
    if (static_cast<int>(source.size()) != N + 1) bad("grid must have N+1 rows");
    for (int i = 0; i <= N; ++i) {
      g[static_cast<std::size_t>(i)] = vector_from_json(source[static_cast<std::size_t>(i)], m, "grid row");
    }
    return g;
  }
  if (!source.is_object()) bad("grid must be an array or a generator object");
  const json& gen = field(source, "generator");
  if (!gen.is_string()) bad("'generator' must be a string");
  const std::string name = gen.get<std::string>();

  if (name == "zero") return g;
  if (name == "constant") {
    const ComplexVector c = vector_from_json(field(source, "value"), m, "constant value");
    for (ComplexVector& v : g) v = c;
    return g;
  }
  if (name == "sin") {
    const json& comps = field(source, "components");
    if (!comps.is_array() || static_cast<Eigen::Index>(comps.size()) != m) bad("sin: need one component per dimension");
    for (Eigen::Index q = 0; q < m; ++q) {
      const json& c = comps[static_cast<std::size_t>(q)];
      if (!c.is_object()) bad("sin: component must be an object");
      const Complex amp = complex_from_json(field(c, "amplitude"), "sin amplitude");
      const int freq = c.contains("frequency") ? integer(c, "frequency") : 1;
      for (int i = 0; i <= N; ++i) {
        g[static_cast<std::size_t>(i)](q) = amp * std::sin(freq * M_PI * static_cast<double>(i) / N);
      }
    }
    const bool complete = source.value("complete_boundary", true);
    if (complete) complete_boundary(g, shape);
    return g;
  }
  if (name == "sl_mode") {
    const int l = integer(source, "mode");
    if (l < 1 || l > N - 1) bad("sl_mode: mode must lie in 1..N-1");
    const ComplexVector amp = vector_from_json(field(source, "amplitude"), m, "sl_mode amplitude");
    const sturm::SLEigensystem es = sturm::solve_sl({N, shape.alpha, shape.beta});
    for (int i = 0; i <= N; ++i) g[static_cast<std::size_t>(i)] = amp * es.modes(i, l - 1);
    return g;
  }
  bad("unknown generator '" + name + "'");
}

ProblemSpec parse_spec(const json& doc) {
  if (!doc.is_object()) bad("top level must be an object");
  ProblemSpec spec;
  MixedProblem& p = spec.problem;
  try {
    const int m = integer(doc, "m");
    if (m < 1) bad("m must be positive");
    p.N = integer(doc, "N");
    if (p.N < 3) bad("N must be at least 3");
    p.k = number(doc, "k");
    p.T = number(doc, "T");
    p.alpha = number(doc, "alpha");
    p.beta = number(doc, "beta");
    p.E = matrix_from_json(field(doc, "E"), m, "E");
    p.A = matrix_from_json(field(doc, "A"), m, "A");
    p.bc.A1 = matrix_from_json(field(doc, "A1"), m, "A1");
    p.bc.A2 = matrix_from_json(field(doc, "A2"), m, "A2");
    p.bc.B1 = matrix_from_json(field(doc, "B1"), m, "B1");
    p.bc.B2 = matrix_from_json(field(doc, "B2"), m, "B2");

    p.tol.residual = default_residual_tol();
    if (doc.contains("options")) {
      const json& o = doc["options"];
      if (!o.is_object()) bad("'options' must be an object");
      if (o.contains("gamma")) {
        const json& g = o["gamma"];
        if (!(g.is_string() && g.get<std::string>() == "auto")) p.gamma = complex_from_json(g, "options.gamma");
      }
      if (o.contains("rank_tol")) p.tol.rank = number(o, "rank_tol");
      if (o.contains("residual_tol")) p.tol.residual = number(o, "residual_tol");
      if (o.contains("eps_growth")) p.tol.eps_growth = number(o, "eps_growth");
      if (o.contains("halvings")) spec.halvings = integer(o, "halvings");
    }
    if (!(p.tol.rank > 0.0) || !(p.tol.residual > 0.0) || !(p.tol.eps_growth > 0.0)) bad("tolerances must be positive");
    if (spec.halvings < 0) bad("halvings must be non-negative");

    spec.F_source = field(doc, "F");
    spec.G_source = field(doc, "G");
    p.F = make_grid(spec.F_source, p);
    p.G = make_grid(spec.G_source, p);
  } catch (const json::exception& e) {
    bad(e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::input) throw;
    throw Error(ErrorKind::input, std::string("spec: ") + e.what());
  }
  p.validate();
  return spec;
}

ProblemSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::input, "cannot open spec file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::input, "malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_spec(doc);
}

json to_json(const ProblemSpec& spec) {
  const MixedProblem& p = spec.problem;
  json doc;
  doc["m"] = p.m();
  doc["N"] = p.N;
  doc["k"] = p.k;
  doc["T"] = p.T;
  doc["alpha"] = p.alpha;
  doc["beta"] = p.beta;
  doc["E"] = matrix_to_json(p.E);
  doc["A"] = matrix_to_json(p.A);
  doc["A1"] = matrix_to_json(p.bc.A1);
  doc["A2"] = matrix_to_json(p.bc.A2);
  doc["B1"] = matrix_to_json(p.bc.B1);
  doc["B2"] = matrix_to_json(p.bc.B2);
  doc["F"] = spec.F_source;
  doc["G"] = spec.G_source;
  json o;
  o["gamma"] = p.gamma ? complex_to_json(*p.gamma) : json("auto");
  o["rank_tol"] = p.tol.rank;
  o["residual_tol"] = p.tol.residual;
  o["eps_growth"] = p.tol.eps_growth;
  o["halvings"] = spec.halvings;
  doc["options"] = o;
  return doc;
}

json to_json(const hypotheses::ValidationReport& report) {
  json checks = json::array();
  for (const hypotheses::CheckResult& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"residual", c.residual},
                      {"detail", c.detail},
                      {"severity", c.severity == hypotheses::Severity::warning ? "warning" : "fatal"}});
  }
  return {{"overall_pass", report.overall_pass()}, {"checks", checks}};
}

json to_json(const solver::SchemeResidual& res, double threshold) {
  return {{"interior", res.interior}, {"boundary0", res.boundary0}, {"boundaryN", res.boundaryN},
          {"init0", res.init0},       {"init1", res.init1},         {"threshold", threshold},
          {"pass", res.max() <= threshold}};
}

json to_json(const solver::SweepResult& sweep) {
  json rows = json::array();
  for (const solver::SweepRow& r : sweep.rows) {
    json row = {{"k", r.k}, {"M", r.M}, {"max_norm", r.max_norm}};
    row["error"] = r.error ? json(*r.error) : json(nullptr);
    rows.push_back(row);
  }
  return {{"rows", rows}, {"ratios", sweep.ratios}, {"bounded", sweep.bounded}};
}

std::string spec_hash(const json& spec) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : spec.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string solution_csv(const ComplexMatrix& U, int N, int M) {
  std::ostringstream out;
  out << "i,j";
  for (Eigen::Index q = 1; q <= U.rows(); ++q) out << ",u" << q << "_re,u" << q << "_im";
  out << '\n';
  for (int j = 0; j <= M; ++j) {
    for (int i = 0; i <= N; ++i) {
      out << i << ',' << j;
      const Eigen::Index c = static_cast<Eigen::Index>(j) * (N + 1) + i;
      for (Eigen::Index q = 0; q < U.rows(); ++q) out << ',' << g17(U(q, c).real()) << ',' << g17(U(q, c).imag());
      out << '\n';
    }
  }
  return out.str();
}

std::string sweep_csv(const solver::SweepResult& sweep) {
  std::ostringstream out;
  out << "k,M,max_norm,error\n";
  for (const solver::SweepRow& r : sweep.rows) {
    std::string err = r.error ? *r.error : "";
    for (char& c : err) {
      if (c == ',' || c == '\n') c = ';';
    }
    out << g17(r.k) << ',' << r.M << ',' << g17(r.max_norm) << ',' << err << '\n';
  }
  return out.str();
}

std::string sweep_plot_script(const solver::SweepResult& sweep, const std::string& title) {
  std::ostringstream out;
  out << "# gnuplot script: max-norm of the discrete solution against the time step\n";
  out << "set logscale xy\n";
  out << "set xlabel \"k\"\n";
  out << "set ylabel \"max ||U(i,j)||_1\"\n";
  out << "set title \"" << title << "\"\n";
  out << "set grid\n";
  out << "$sweep << EOD\n";
  for (const solver::SweepRow& r : sweep.rows) {
    // log axes cannot show failed or zero rows
    if (r.error || !(r.max_norm > 0.0)) continue;
    out << g17(r.k) << ' ' << g17(r.max_norm) << '\n';
  }
  out << "EOD\n";
  out << "plot $sweep using 1:2 with linespoints title \"max norm\"\n";
  return out.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::input, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error(ErrorKind::input, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace descwave::io
