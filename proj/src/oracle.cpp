#include "descwave/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "descwave/error.hpp"
#include "descwave/matfun.hpp"
#include "descwave/pencil.hpp"

namespace descwave::oracle {

namespace {

SteppedSolution start(const MixedProblem& problem, StepMethod method) {
  SteppedSolution s;
  s.N = problem.N;
  s.M = problem.steps();
  s.method = method;
  s.U = ComplexMatrix::Zero(problem.m(), static_cast<Eigen::Index>(s.N + 1) * (s.M + 1));
  for (int i = 0; i <= s.N; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    s.U.col(i) = problem.F[iu];
    s.U.col(s.N + 1 + i) = problem.F[iu] + problem.k * problem.G[iu];
  }
  return s;
}

// Solve L x = b for one boundary node; exact when L is well conditioned,
// otherwise the minimum-norm solution if one exists.
ComplexVector boundary_solve(const ComplexMatrix& L, const ComplexVector& b, double cond_limit, double tol, int j,
                             const char* side) {
  if (matfun::condition_number(L) < cond_limit) return L.partialPivLu().solve(b);
  const matfun::MitraSolution sol = matfun::solve_mitra(L, matfun::moore_penrose(L), b, 1e-8);
  if (sol.residual > tol * (1.0 + b.norm())) {
    throw Error(ErrorKind::infeasible_boundary, std::string("step_nonsingular: ") + side +
                                                    " boundary row has no solution at level " + std::to_string(j + 1));
  }
  return sol.particular;
}

}  // namespace

SteppedSolution step_nonsingular(const MixedProblem& problem) {
  problem.validate();
  const Tolerances& tol = problem.tol;
  if (!(matfun::condition_number(problem.E) < tol.cond_limit)) {
    throw Error(ErrorKind::precondition, "step_nonsingular: E is numerically singular");
  }
  SteppedSolution s = start(problem, StepMethod::explicit_nonsingular);
  const int N = s.N;
  const double n = N;
  const double r2 = problem.r() * problem.r();
  const ComplexMatrix Einv = problem.E.partialPivLu().inverse();
  const ComplexMatrix side = r2 * (Einv * problem.A);
  const ComplexMatrix center = 2.0 * (ComplexMatrix::Identity(problem.m(), problem.m()) - side);
  const ComplexMatrix left = problem.bc.A1 - n * problem.bc.A2;
  const ComplexMatrix right = problem.bc.B1 + n * problem.bc.B2;
  auto col = [&](int i, int j) { return s.U.col(static_cast<Eigen::Index>(j) * (N + 1) + i); };

  for (int j = 1; j < s.M; ++j) {
    for (int i = 1; i < N; ++i) {
      col(i, j + 1) = side * (col(i + 1, j) + col(i - 1, j)) + center * col(i, j) - col(i, j - 1);
    }
    col(0, j + 1) = boundary_solve(left, -n * (problem.bc.A2 * col(1, j + 1)), tol.cond_limit, tol.residual, j, "left");
    col(N, j + 1) =
        boundary_solve(right, n * (problem.bc.B2 * col(N - 1, j + 1)), tol.cond_limit, tol.residual, j, "right");
  }
  return s;
}

SteppedSolution step_singular(const MixedProblem& problem) {
  problem.validate();
  const Tolerances& tol = problem.tol;
  const Complex gamma = problem.gamma ? *problem.gamma : pencil::find_gamma(problem.E, problem.A, tol.cond_limit);
  const ComplexMatrix S = (gamma * problem.E + problem.A).partialPivLu().inverse();
  const ComplexMatrix Ehat = S * problem.E;
  const ComplexMatrix Ahat = S * problem.A;
  const Eigen::Index m = problem.m();
  const ComplexMatrix I = ComplexMatrix::Identity(m, m);
  const ComplexMatrix algebraic = (problem.r() * problem.r()) * ((I - Ehat * matfun::moore_penrose(Ehat)) * Ahat);

  SteppedSolution s = start(problem, StepMethod::projected_singular);
  const int N = s.N;
  const double n = N;
  const Eigen::Index unknowns = static_cast<Eigen::Index>(N + 1) * m;
  const Eigen::Index rows = 2 * static_cast<Eigen::Index>(N - 1) * m + 2 * m;

  ComplexMatrix B = ComplexMatrix::Zero(rows, unknowns);
  Eigen::Index row = 0;
  for (int i = 1; i < N; ++i, row += m) B.block(row, i * m, m, m) = Ehat;
  B.block(row, 0, m, m) = problem.bc.A1 - n * problem.bc.A2;
  B.block(row, m, m, m) = n * problem.bc.A2;
  row += m;
  B.block(row, (N - 1) * m, m, m) = -n * problem.bc.B2;
  B.block(row, N * m, m, m) = problem.bc.B1 + n * problem.bc.B2;
  row += m;
  for (int i = 1; i < N; ++i, row += m) {
    B.block(row, (i - 1) * m, m, m) = algebraic;
    B.block(row, i * m, m, m) = -2.0 * algebraic;
    B.block(row, (i + 1) * m, m, m) = algebraic;
  }
  const ComplexMatrix Bplus = matfun::moore_penrose(B, tol.rank);

  const double r2 = problem.r() * problem.r();
  const ComplexMatrix side = r2 * problem.A;
  const ComplexMatrix center = 2.0 * (problem.E - side);
  auto col = [&](int i, int j) { return s.U.col(static_cast<Eigen::Index>(j) * (N + 1) + i); };

  ComplexVector rhs = ComplexVector::Zero(rows);
  for (int j = 1; j < s.M; ++j) {
    for (int i = 1; i < N; ++i) {
      rhs.segment((i - 1) * m, m) =
          S * (side * (col(i + 1, j) + col(i - 1, j)) + center * col(i, j) - problem.E * col(i, j - 1));
    }
    const ComplexVector x = Bplus * rhs;
    const double residual = (B * x - rhs).norm();
    s.worst_step_residual = std::max(s.worst_step_residual, residual);
    if (residual > tol.residual * (1.0 + rhs.norm())) {
      s.inconsistent_at = j;
      return s;
    }
    for (int i = 0; i <= N; ++i) col(i, j + 1) = x.segment(i * m, m);
  }
  return s;
}

DrazinLimit drazin_by_limit(const ComplexMatrix& a, double rank_tol) {
  const Eigen::Index m = a.rows();
  DrazinLimit out;
  if (m == 0) return out;
  const double norm2 = Eigen::JacobiSVD<ComplexMatrix>(a).singularValues()(0);
  if (norm2 == 0.0) {
    out.value = ComplexMatrix::Zero(m, m);
    out.k = 1;
    return out;
  }
  // Work with A / ||A|| so the powers stay O(1); (cA)^D = A^D / c.
  const ComplexMatrix b = a / norm2;
  auto rank_of = [&](const ComplexMatrix& x) {
    const Eigen::VectorXd sv = Eigen::JacobiSVD<ComplexMatrix>(x).singularValues();
    return static_cast<Eigen::Index>((sv.array() > static_cast<double>(m) * rank_tol).count());
  };

  int k = static_cast<int>(m);
  Eigen::Index rank_k = 0;
  ComplexMatrix power = b;
  Eigen::Index prev = rank_of(ComplexMatrix::Identity(m, m));
  for (int j = 1; j <= m; ++j) {
    const Eigen::Index rj = rank_of(power);
    if (rj == prev) {
      k = j - 1;
      rank_k = rj;
      break;
    }
    prev = rj;
    rank_k = rj;
    power = power * b;
  }
  out.k = k;

  ComplexMatrix bk = ComplexMatrix::Identity(m, m);
  for (int j = 0; j < k; ++j) bk = bk * b;
  ComplexMatrix big = bk * bk * b;
  if (rank_k == 0) {
    out.value = ComplexMatrix::Zero(m, m);
    return out;
  }
  // Pseudo-inverse truncated to the known rank of the core.
  Eigen::JacobiSVD<ComplexMatrix> svd(big, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  out.reliable = sv(rank_k - 1) > 1e-12 * sv(0);
  const ComplexMatrix pinv = svd.matrixV().leftCols(rank_k) *
                             sv.head(rank_k).cwiseInverse().asDiagonal() *
                             svd.matrixU().leftCols(rank_k).adjoint();
  out.value = (bk * pinv * bk) / norm2;
  return out;
}

sturm::SLEigensystem sl_dense_oracle(const sturm::SLProblem& p) {
  p.validate();
  const int n = p.N - 1;
  const double an = p.alpha * p.N;
  const double bn = p.beta * p.N;
  // h(0) = c0 h(1), h(N) = cN h(N-1).
  const double c0 = -an / (1.0 - an);
  const double cN = bn / (1.0 + bn);

  // lambda h(i) = 2 h(i) - h(i+1) - h(i-1) with the end values substituted.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 2.0;
    if (i > 0) a(i, i - 1) = -1.0;
    if (i + 1 < n) a(i, i + 1) = -1.0;
  }
  a(0, 0) -= c0;
  a(n - 1, n - 1) -= cN;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::numerical_failure, "sl_dense_oracle: eigensolver failed");
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int l, int r) { return solver.eigenvalues()(l).real() < solver.eigenvalues()(r).real(); });

  sturm::SLEigensystem es;
  es.problem = p;
  es.eigenvalues.resize(n);
  es.modes = Eigen::MatrixXd::Zero(p.N + 1, n);
  for (int c = 0; c < n; ++c) {
    const int l = order[static_cast<std::size_t>(c)];
    es.eigenvalues(c) = solver.eigenvalues()(l).real();
    Eigen::VectorXd v = solver.eigenvectors().col(l).real();
    v.normalize();
    for (int i = 0; i < n; ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0.0) v = -v;
        break;
      }
    }
    es.modes.col(c).segment(1, n) = v;
    es.modes(0, c) = c0 * v(0);
    es.modes(p.N, c) = cN * v(n - 1);
  }
  return es;
}

CrossCheck compare(const solver::DiscreteSolution& sol, const SteppedSolution& stepped, const MixedProblem& problem,
                   double tol) {
  CrossCheck out;
  if (sol.U.rows() != stepped.U.rows() || sol.U.cols() != stepped.U.cols()) {
    throw Error(ErrorKind::precondition, "compare: grids have different shapes");
  }
  for (Eigen::Index c = 0; c < sol.U.cols(); ++c) {
    out.difference = std::max(out.difference, norm1(ComplexVector(sol.U.col(c) - stepped.U.col(c))));
    out.scale = std::max(out.scale, norm1(ComplexVector(sol.U.col(c))));
  }
  out.agree = out.difference <= tol * std::max(out.scale, 1.0);
  const double limit = solver::residual_threshold(problem);
  out.residuals_pass = stepped.consistent() && solver::scheme_residual(sol, problem).max() <= limit &&
                       solver::scheme_residual(stepped.U, stepped.M, problem).max() <= limit;
  out.non_unique = !out.agree && out.residuals_pass;
  return out;
}

}  // namespace descwave::oracle
