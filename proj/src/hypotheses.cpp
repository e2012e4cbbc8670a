#include "descwave/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include <Eigen/SVD>

#include "descwave/error.hpp"
#include "descwave/solver.hpp"
#include "descwave/sturm.hpp"

namespace descwave::hypotheses {

namespace {

// Tolerance on |P+-(d)| - 1.
constexpr double kUnitModulusTol = 1e-9;

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

double grid_max(const VectorGrid& g) {
  double s = 0.0;
  for (const ComplexVector& v : g) s = std::max(s, norm1(v));
  return s;
}

CheckResult residual_check(std::string name, double residual, double scale, double tol, std::string what) {
  CheckResult c;
  c.name = std::move(name);
  c.residual = residual;
  const double limit = tol * (1.0 + scale);
  c.pass = residual <= limit;
  c.detail = what + " = " + fmt(residual) + (c.pass ? " <= " : " > ") + fmt(limit);
  return c;
}

std::vector<CheckResult> kernel_checks(const CouplingMatrix& g, const VectorGrid& F, const VectorGrid& Gdata,
                                       double tol) {
  const double gn = norm1(g.G);
  auto worst = [&](const VectorGrid& grid) {
    double r = 0.0;
    for (const ComplexVector& v : grid) r = std::max(r, norm1(ComplexVector(g.G * v)));
    return r;
  };
  return {residual_check("kernel-F", worst(F), gn * grid_max(F), tol, "max_i ||G F(i)||"),
          residual_check("kernel-G", worst(Gdata), gn * grid_max(Gdata), tol, "max_i ||G g(i)||")};
}

std::vector<CheckResult> projector_checks(const pencil::RegularizedPencil& rp, const VectorGrid& F,
                                          const VectorGrid& Gdata, double tol) {
  const double pn = norm1(rp.P);
  auto worst = [&](const VectorGrid& grid) {
    double r = 0.0;
    for (const ComplexVector& v : grid) r = std::max(r, norm1(ComplexVector(rp.P * v - v)));
    return r;
  };
  return {residual_check("projector-F", worst(F), pn * grid_max(F), tol, "max_i ||P F(i) - F(i)||"),
          residual_check("projector-G", worst(Gdata), pn * grid_max(Gdata), tol, "max_i ||P g(i) - g(i)||")};
}

CheckResult skipped(std::string name, const std::string& why) {
  CheckResult c;
  c.name = std::move(name);
  c.pass = false;
  c.residual = 0.0;
  c.detail = "not evaluated: " + why;
  return c;
}

std::string indexed(const char* name, int l) { return std::string(name) + "[" + std::to_string(l) + "]"; }

}  // namespace

bool ValidationReport::overall_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass || c.severity == Severity::warning; });
}

bool ValidationReport::has_warning() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return !c.pass && c.severity == Severity::warning; });
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

std::vector<std::string> ValidationReport::failed() const {
  std::vector<std::string> out;
  for (const CheckResult& c : checks) {
    if (!c.pass && c.severity == Severity::fatal) out.push_back(c.name);
  }
  return out;
}

CouplingMatrix build_G(double alpha, double beta, const BoundaryConditions& bc) {
  const Eigen::Index m = bc.A1.rows();
  CouplingMatrix g;
  g.alpha = alpha;
  g.beta = beta;
  g.G.resize(2 * m, m);
  g.G.topRows(m) = alpha * bc.A1 - bc.A2;
  g.G.bottomRows(m) = beta * bc.B1 - bc.B2;
  return g;
}

RankInfo rank_deficiency(const CouplingMatrix& g, double rank_tol) {
  RankInfo info;
  const Eigen::Index m = g.m();
  info.rank = matfun::numerical_rank(g.G, rank_tol);
  info.deficient = info.rank < m;
  if (m > 0 && g.G.size() > 0) {
    const Eigen::VectorXd sv = Eigen::JacobiSVD<ComplexMatrix>(g.G).singularValues();
    info.smallest = sv.size() >= m ? sv(m - 1) : 0.0;
  }
  return info;
}

ComplexMatrix kernel_basis(const CouplingMatrix& g, double rank_tol) {
  const Eigen::Index m = g.m();
  const Eigen::Index rank = matfun::numerical_rank(g.G, rank_tol);
  if (rank == 0) return ComplexMatrix::Identity(m, m);
  Eigen::JacobiSVD<ComplexMatrix> svd(g.G, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(m - rank);
}

std::vector<CheckResult> check_data_conditions(const pencil::RegularizedPencil& rp, const CouplingMatrix& g,
                                               const VectorGrid& F, const VectorGrid& Gdata, double tol) {
  std::vector<CheckResult> out = kernel_checks(g, F, Gdata, tol);
  for (CheckResult& c : projector_checks(rp, F, Gdata, tol)) out.push_back(std::move(c));
  return out;
}

InvarianceResult check_invariance(const ComplexMatrix& D, const CouplingMatrix& g, double rank_tol, double tol) {
  const Eigen::Index m = g.m();
  InvarianceResult out;
  const double limit = tol * (1.0 + g.G.norm() * D.norm());
  const ComplexMatrix gplus = matfun::moore_penrose(g.G, rank_tol);
  out.residual = (g.G * D * (ComplexMatrix::Identity(m, m) - gplus * g.G)).norm();
  out.pass = out.residual <= limit;
  const ComplexMatrix basis = kernel_basis(g, rank_tol);
  out.kernel_residual = basis.cols() == 0 ? 0.0 : (g.G * D * basis).norm();
  out.kernel_pass = out.kernel_residual <= limit;
  return out;
}

InvarianceResult check_invariance(const pencil::RegularizedPencil& rp, const CouplingMatrix& g, double rank_tol,
                                  double tol) {
  return check_invariance(rp.D, g, rank_tol, tol);
}

ValidationReport validate_all(const MixedProblem& problem) {
  problem.validate();
  const Tolerances& tol = problem.tol;
  const int modes = problem.N - 1;
  ValidationReport report;
  auto& checks = report.checks;

  const CouplingMatrix g = build_G(problem.alpha, problem.beta, problem.bc);

  std::optional<pencil::RegularizedPencil> rp;
  {
    CheckResult c;
    c.name = "gamma-found";
    try {
      const Complex gamma = problem.gamma ? *problem.gamma : pencil::find_gamma(problem.E, problem.A, tol.cond_limit);
      rp = pencil::regularize(problem.E, problem.A, gamma, tol.rank, tol.cond_limit);
      c.pass = true;
      c.residual = matfun::condition_number(gamma * problem.E + problem.A);
      std::ostringstream s;
      s << "gamma = " << gamma << ", cond(gamma E + A) = " << fmt(c.residual);
      c.detail = s.str();
    } catch (const Error& e) {
      c.pass = false;
      c.detail = e.what();
    }
    checks.push_back(c);
  }
  const std::string no_gamma = "no regularising shift";

  {
    CheckResult c;
    c.name = "condition-45";
    c.severity = Severity::warning;
    if (rp) {
      const pencil::Condition45 c45 = pencil::check_condition_45(*rp, tol.rank);
      double radius = 0.0;
      for (const Complex& d : c45.spectrum.eigenvalues) radius = std::max(radius, std::abs(d));
      c.pass = c45.ok;
      c.residual = radius;
      c.detail = c45.ok ? "D is not nilpotent, spectral radius " + fmt(radius)
                        : "D is nilpotent: only the trivial solution is produced";
    } else {
      c = skipped("condition-45", no_gamma);
      c.severity = Severity::warning;
    }
    checks.push_back(c);
  }

  {
    const RankInfo info = rank_deficiency(g, tol.rank);
    CheckResult c;
    c.name = "rank-deficiency";
    c.pass = info.deficient;
    c.residual = info.smallest;
    c.detail = "rank G = " + std::to_string(info.rank) + (info.deficient ? " < " : " = ") + std::to_string(g.m());
    checks.push_back(c);
  }

  for (CheckResult& c : kernel_checks(g, problem.F, problem.G, tol.residual)) checks.push_back(std::move(c));
  if (rp) {
    for (CheckResult& c : projector_checks(*rp, problem.F, problem.G, tol.residual)) checks.push_back(std::move(c));
    const InvarianceResult inv = check_invariance(*rp, g, tol.rank, tol.residual);
    CheckResult c;
    c.name = "invariance-78";
    c.pass = inv.pass;
    c.residual = inv.residual;
    c.detail = "||G D (I - G+ G)|| = " + fmt(inv.residual) + ", ||G D K|| = " + fmt(inv.kernel_residual) +
               (inv.pass == inv.kernel_pass ? "" : " (kernel-basis form disagrees)");
    checks.push_back(c);
  } else {
    checks.push_back(skipped("projector-F", no_gamma));
    checks.push_back(skipped("projector-G", no_gamma));
    checks.push_back(skipped("invariance-78", no_gamma));
  }

  std::optional<sturm::SLEigensystem> es;
  std::string sl_error;
  try {
    es = sturm::solve_sl({problem.N, problem.alpha, problem.beta});
  } catch (const Error& e) {
    sl_error = e.what();
  }

  if (!rp || !es) {
    const std::string why = rp ? sl_error : no_gamma;
    for (int l = 1; l <= modes; ++l) {
      checks.push_back(skipped(indexed("rho-admissible", l), why));
      checks.push_back(skipped(indexed("unit-modulus", l), why));
      checks.push_back(skipped(indexed("consistency", l), why));
    }
    return report;
  }

  const double r = problem.r();
  const double lambda_max = es->eigenvalues.cwiseAbs().maxCoeff();
  const std::vector<Complex> spectrum = matfun::spectrum(rp->D).eigenvalues;
  const std::vector<Complex> nonzero = pencil::nonzero_spectrum(*rp);
  const VectorGrid Fx = sturm::expand_vector(problem.F, *es);
  const VectorGrid Gx = sturm::expand_vector(problem.G, *es);
  const double scale = data_scale(problem);

  for (int l = 1; l <= modes; ++l) {
    const double rho = -r * r * es->eigenvalues(l - 1);

    const pencil::Admissibility adm = pencil::rho_admissible(rho, *rp, lambda_max, r);
    CheckResult ca;
    ca.name = indexed("rho-admissible", l);
    ca.pass = adm.ok;
    double smallest = nonzero.empty() ? 0.0 : INFINITY;
    for (const Complex& d : nonzero) {
      const Complex rd = rho * d;
      smallest = std::min(smallest, std::abs(rd) * std::abs(1.0 + 0.25 * rd));
    }
    ca.residual = smallest;
    ca.detail = "rho = " + fmt(rho) + (adm.ok ? "" : ": " + adm.reasons.front());
    checks.push_back(ca);

    CheckResult cu;
    cu.name = indexed("unit-modulus", l);
    double worst = 0.0;
    for (const Complex& d : spectrum) {
      const auto [p, q] = pencil::scalar_roots(rho, d);
      worst = std::max({worst, std::abs(p), std::abs(q)});
    }
    cu.pass = worst <= 1.0 + kUnitModulusTol;
    cu.residual = std::max(0.0, worst - 1.0);
    cu.detail = "max |P+-(d)| = " + fmt(worst);
    checks.push_back(cu);

    CheckResult cc;
    cc.name = indexed("consistency", l);
    if (!adm.ok) {
      cc = skipped(cc.name, "rho not admissible");
    } else {
      try {
        const pencil::ModePropagators mp = pencil::make_propagators(*rp, rho, l);
        // Core parts only: data leaving the core is the projector checks' business.
        const auto lu = static_cast<std::size_t>(l - 1);
        const solver::ModeCoefficients mc = solver::mode_coefficients(
            rp->P * Fx[lu], rp->P * Gx[lu], *rp, mp, problem.k, tol.residual, scale, tol.rank);
        cc.pass = mc.consistent;
        cc.residual = mc.residual;
        cc.detail = std::string("coefficient systems ") + (mc.consistent ? "consistent" : "inconsistent") +
                    ", residual " + fmt(mc.residual);
      } catch (const Error& e) {
        cc.pass = false;
        cc.detail = e.what();
      }
    }
    checks.push_back(cc);
  }
  return report;
}

}  // namespace descwave::hypotheses
