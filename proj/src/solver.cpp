#include "descwave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include <Eigen/SVD>

#include "descwave/error.hpp"
#include "descwave/kernels.hpp"

namespace descwave::solver {

namespace {

// Some threads may throw; rethrow the failure of the lowest index so the
// error is independent of scheduling.
template <typename Body>
void parallel_modes(int count, Body body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
  for (int l = 0; l < count; ++l) {
    try {
      body(l);
    } catch (...) {
      errors[static_cast<std::size_t>(l)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

ComplexMatrix inner_inverse(const ComplexMatrix& K, double rank_tol, bool& group) {
  group = false;
  const Eigen::Index m = K.rows();
  if (K.norm() == 0.0) {
    group = true;
    return ComplexMatrix::Zero(m, m);
  }
  try {
    if (matfun::matrix_index(K, rank_tol) <= 1) {
      ComplexMatrix kg = matfun::group_style_inverse(K, rank_tol);
      if ((K * kg * K - K).norm() <= 1e-8 * K.norm()) {
        group = true;
        return kg;
      }
    }
  } catch (const Error&) {
  }
  return matfun::moore_penrose(K, rank_tol);
}

}  // namespace

VectorGrid discretize(const std::function<ComplexVector(double)>& f, int N, Eigen::Index m) {
  if (N < 3) throw Error(ErrorKind::precondition, "discretize: N must be at least 3");
  VectorGrid out;
  out.reserve(static_cast<std::size_t>(N + 1));
  for (int i = 0; i <= N; ++i) {
    ComplexVector v = f(static_cast<double>(i) / N);
    if (v.size() != m) throw Error(ErrorKind::precondition, "discretize: sample has wrong dimension");
    if (!v.allFinite()) throw Error(ErrorKind::precondition, "discretize: non-finite sample");
    out.push_back(std::move(v));
  }
  return out;
}

VectorGrid discretize(const VectorGrid& grid, int N, Eigen::Index m) {
  if (N < 3) throw Error(ErrorKind::precondition, "discretize: N must be at least 3");
  if (static_cast<int>(grid.size()) != N + 1) throw Error(ErrorKind::precondition, "discretize: grid must have N+1 nodes");
  for (const ComplexVector& v : grid) {
    if (v.size() != m) throw Error(ErrorKind::precondition, "discretize: sample has wrong dimension");
    if (!v.allFinite()) throw Error(ErrorKind::precondition, "discretize: non-finite sample");
  }
  return grid;
}

ModeCoefficients mode_coefficients(const ComplexVector& F_l, const ComplexVector& G_l,
                                   const pencil::RegularizedPencil& rp, const pencil::ModePropagators& mp, double k,
                                   double tol, double scale, double rank_tol) {
  const Eigen::Index m = rp.dim();
  const ComplexMatrix I = ComplexMatrix::Identity(m, m);
  const ComplexMatrix K = (mp.Z1 - mp.Z0) * rp.P;
  const ComplexVector bP = (mp.Z1 - I) * F_l - k * G_l;
  const ComplexVector bQ = k * G_l - (mp.Z0 - I) * F_l;

  ModeCoefficients out;
  out.F_l = F_l;
  out.G_l = G_l;
  const ComplexMatrix Kg = inner_inverse(K, rank_tol, out.group_inverse);

  const matfun::MitraSolution sp = matfun::solve_mitra(K, Kg, bP, 1e-8);
  const matfun::MitraSolution sq = matfun::solve_mitra(K, Kg, bQ, 1e-8);
  const ComplexVector w = F_l - Kg * (K * F_l);
  out.P = sp.particular + 0.5 * w;
  out.Q = sq.particular + 0.5 * w;
  out.residual = std::max(sp.residual, sq.residual);
  out.consistent = out.residual <= tol * (1.0 + scale);
  return out;
}

ModeCoefficients mode_coefficients(int l, const sturm::SLEigensystem& es, const pencil::RegularizedPencil& rp,
                                   const pencil::ModePropagators& mp, const VectorGrid& F, const VectorGrid& Gdata,
                                   double k, double tol) {
  const VectorGrid Fx = sturm::expand_vector(F, es);
  const VectorGrid Gx = sturm::expand_vector(Gdata, es);
  double scale = 0.0;
  for (const ComplexVector& v : F) scale = std::max(scale, norm1(v));
  for (const ComplexVector& v : Gdata) scale = std::max(scale, norm1(v));
  ModeCoefficients mc =
      mode_coefficients(Fx[static_cast<std::size_t>(l)], Gx[static_cast<std::size_t>(l)], rp, mp, k, tol, scale);
  if (!mc.consistent) {
    std::ostringstream s;
    s << "mode " << l + 1 << ": coefficient systems are inconsistent (residual " << mc.residual
      << "); the data violate the kernel/projector conditions";
    throw Error(ErrorKind::hypothesis_violation, s.str());
  }
  return mc;
}

double DiscreteSolution::max_norm() const {
  double s = 0.0;
  for (Eigen::Index c = 0; c < U.cols(); ++c) s = std::max(s, norm1(ComplexVector(U.col(c))));
  return s;
}

Prepared prepare(const MixedProblem& problem) {
  problem.validate();
  const Tolerances& tol = problem.tol;
  const Complex gamma = problem.gamma ? *problem.gamma : pencil::find_gamma(problem.E, problem.A, tol.cond_limit);
  return {pencil::regularize(problem.E, problem.A, gamma, tol.rank, tol.cond_limit),
          sturm::solve_sl({problem.N, problem.alpha, problem.beta})};
}

std::vector<Mode> compute_modes(const MixedProblem& problem, const Prepared& prep) {
  const int count = prep.es.count();
  const double r = problem.r();
  const double lambda_max = prep.es.eigenvalues.cwiseAbs().maxCoeff();
  const VectorGrid Fx = sturm::expand_vector(problem.F, prep.es);
  const VectorGrid Gx = sturm::expand_vector(problem.G, prep.es);
  const double scale = data_scale(problem);

  std::vector<Mode> modes(static_cast<std::size_t>(count));
  parallel_modes(count, [&](int l) {
    const auto lu = static_cast<std::size_t>(l);
    Mode& mode = modes[lu];
    mode.l = l;
    mode.lambda = prep.es.eigenvalues(l);
    const double rho = -r * r * mode.lambda;
    const pencil::Admissibility adm = pencil::rho_admissible(rho, prep.rp, lambda_max, r);
    if (!adm.ok) {
      throw Error(ErrorKind::precondition, "mode " + std::to_string(l + 1) + ": " + adm.reasons.front());
    }
    mode.propagators = pencil::make_propagators(prep.rp, rho, l + 1);
    mode.coefficients = mode_coefficients(Fx[lu], Gx[lu], prep.rp, mode.propagators, problem.k, problem.tol.residual,
                                          scale, problem.tol.rank);
    if (!mode.coefficients.consistent) {
      std::ostringstream s;
      s << "mode " << l + 1 << ": coefficient systems are inconsistent (residual " << mode.coefficients.residual
        << "); the data violate the kernel/projector conditions";
      throw Error(ErrorKind::hypothesis_violation, s.str());
    }
  });
  return modes;
}

DiscreteSolution assemble(const MixedProblem& problem, const sturm::SLEigensystem& es,
                          const pencil::RegularizedPencil& rp, const std::vector<Mode>& modes) {
  DiscreteSolution sol;
  sol.N = problem.N;
  sol.M = problem.steps();
  sol.modes = modes;

  const int count = static_cast<int>(modes.size());
  std::vector<ComplexMatrix> temporal(static_cast<std::size_t>(count));
  Eigen::MatrixXd spatial(problem.N + 1, count);
  parallel_modes(count, [&](int l) {
    const Mode& mode = modes[static_cast<std::size_t>(l)];
    const std::vector<ComplexVector> g = pencil::solve_matrix_difference(rp, mode.propagators, mode.coefficients.P,
                                                                         mode.coefficients.Q, sol.M);
    ComplexMatrix& t = temporal[static_cast<std::size_t>(l)];
    t.resize(rp.dim(), sol.M + 1);
    for (int j = 0; j <= sol.M; ++j) t.col(j) = g[static_cast<std::size_t>(j)];
    spatial.col(l) = es.modes.col(mode.l);
  });
  sol.U = count == 0 ? ComplexMatrix::Zero(rp.dim(), static_cast<Eigen::Index>(sol.N + 1) * (sol.M + 1))
                     : kernels::superpose(temporal, spatial, sol.N, sol.M);
  return sol;
}

DiscreteSolution solve(const MixedProblem& problem) {
  const Prepared prep = prepare(problem);
  if (!pencil::check_condition_45(prep.rp, problem.tol.rank).ok) {
    DiscreteSolution sol;
    sol.N = problem.N;
    sol.M = problem.steps();
    sol.U = ComplexMatrix::Zero(problem.m(), static_cast<Eigen::Index>(sol.N + 1) * (sol.M + 1));
    sol.trivial = true;
    return sol;
  }
  return assemble(problem, prep.es, prep.rp, compute_modes(problem, prep));
}

double SchemeResidual::max() const { return std::max({interior, boundary0, boundaryN, init0, init1}); }

SchemeResidual scheme_residual(const ComplexMatrix& U, int M, const MixedProblem& problem) {
  const int N = problem.N;
  if (U.rows() != problem.m() || U.cols() != static_cast<Eigen::Index>(N + 1) * (M + 1)) {
    throw Error(ErrorKind::precondition, "scheme_residual: grid has the wrong shape");
  }
  auto at = [&](int i, int j) { return U.col(static_cast<Eigen::Index>(j) * (N + 1) + i); };
  const BoundaryConditions& bc = problem.bc;

  SchemeResidual res;
  res.interior = kernels::interior_residual(U, problem.E, problem.A, problem.r(), N, M);
  for (int j = 0; j <= M; ++j) {
    const ComplexVector left = bc.A1 * at(0, j) + static_cast<double>(N) * (bc.A2 * (at(1, j) - at(0, j)));
    const ComplexVector right = bc.B1 * at(N, j) + static_cast<double>(N) * (bc.B2 * (at(N, j) - at(N - 1, j)));
    res.boundary0 = std::max(res.boundary0, norm1(left));
    res.boundaryN = std::max(res.boundaryN, norm1(right));
  }
  for (int i = 0; i <= N; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    res.init0 = std::max(res.init0, norm1(ComplexVector(at(i, 0) - problem.F[iu])));
    res.init1 = std::max(res.init1, norm1(ComplexVector((at(i, 1) - at(i, 0)) / problem.k - problem.G[iu])));
  }
  return res;
}

SchemeResidual scheme_residual(const DiscreteSolution& sol, const MixedProblem& problem) {
  return scheme_residual(sol.U, sol.M, problem);
}

double residual_threshold(const MixedProblem& problem) { return problem.tol.residual * (1.0 + data_scale(problem)); }

SweepResult stability_sweep(const MixedProblem& problem, int halvings) {
  if (halvings < 0) throw Error(ErrorKind::input, "stability_sweep: halvings must be non-negative");
  SweepResult out;
  MixedProblem run = problem;
  for (int s = 0; s <= halvings; ++s) {
    run.k = problem.k / std::ldexp(1.0, s);
    SweepRow row;
    row.k = run.k;
    row.M = run.steps();
    try {
      row.max_norm = solve(run).max_norm();
    } catch (const Error& e) {
      row.error = e.what();
    }
    out.rows.push_back(row);
  }
  out.bounded = true;
  for (std::size_t s = 0; s < out.rows.size(); ++s) {
    if (out.rows[s].error) out.bounded = false;
    if (s == 0 || out.rows[s].error || out.rows[s - 1].error) continue;
    const double prev = out.rows[s - 1].max_norm;
    const double cur = out.rows[s].max_norm;
    const double ratio = prev == 0.0 ? (cur == 0.0 ? 1.0 : INFINITY) : cur / prev;
    out.ratios.push_back(ratio);
    if (!(ratio <= 1.0 + problem.tol.eps_growth)) out.bounded = false;
  }
  return out;
}

PowerEnvelope power_envelope(const ComplexMatrix& Z, int M, double k) {
  PowerEnvelope env;
  ComplexMatrix power = ComplexMatrix::Identity(Z.rows(), Z.cols());
  env.peak = 1.0;
  for (int j = 1; j <= M; ++j) {
    power = Z * power;
    env.peak = std::max(env.peak, Eigen::JacobiSVD<ComplexMatrix>(power).singularValues()(0));
  }
  env.S = M > 0 ? std::log(env.peak) / (M * k) : 0.0;
  return env;
}

}  // namespace descwave::solver
