#include "descwave/sturm.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "descwave/error.hpp"

namespace descwave::sturm {

namespace {

constexpr double kDenominatorTol = 1e-12;

double left_corner(const SLProblem& p) {
  const double an = p.alpha * p.N;
  return (2.0 - an) / (1.0 - an);
}

double right_corner(const SLProblem& p) {
  const double bn = p.beta * p.N;
  return (2.0 + bn) / (1.0 + bn);
}

}  // namespace

void SLProblem::validate() const {
  if (N < 3) throw Error(ErrorKind::precondition, "SL problem needs N >= 3");
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw Error(ErrorKind::precondition, "SL problem: non-finite alpha/beta");
  if (std::abs(1.0 - alpha * N) <= kDenominatorTol) {
    throw Error(ErrorKind::degenerate_boundary, "SL problem: alpha * N = 1 makes the left boundary degenerate");
  }
  if (std::abs(1.0 + beta * N) <= kDenominatorTol) {
    throw Error(ErrorKind::degenerate_boundary, "SL problem: beta * N = -1 makes the right boundary degenerate");
  }
}

Eigen::MatrixXd build_sl_matrix(const SLProblem& p) {
  p.validate();
  const int n = p.N - 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 2.0;
    if (i + 1 < n) {
      a(i, i + 1) = -1.0;
      a(i + 1, i) = -1.0;
    }
  }
  a(0, 0) = left_corner(p);
  a(n - 1, n - 1) = right_corner(p);
  return a;
}

double extend_left(const SLProblem& p, double h1) {
  const double an = p.alpha * p.N;
  return -an * h1 / (1.0 - an);
}

double extend_right(const SLProblem& p, double hn1) {
  const double bn = p.beta * p.N;
  return bn * hn1 / (1.0 + bn);
}

SLEigensystem solve_sl(const SLProblem& p) {
  p.validate();
  const int n = p.N - 1;
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(n, 2.0);
  diag(0) = left_corner(p);
  diag(n - 1) = right_corner(p);
  const Eigen::VectorXd sub = Eigen::VectorXd::Constant(n - 1, -1.0);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::numerical_failure, "solve_sl: tridiagonal eigensolver failed");

  SLEigensystem es;
  es.problem = p;
  es.eigenvalues = solver.eigenvalues();
  es.modes = Eigen::MatrixXd::Zero(p.N + 1, n);
  for (int l = 0; l < n; ++l) {
    Eigen::VectorXd v = solver.eigenvectors().col(l);
    v.normalize();
    for (int i = 0; i < n; ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0.0) v = -v;
        break;
      }
    }
    es.modes.col(l).segment(1, n) = v;
    es.modes(0, l) = extend_left(p, v(0));
    es.modes(p.N, l) = extend_right(p, v(n - 1));
  }
  return es;
}

ComplexVector expand(const ComplexVector& u, const SLEigensystem& es) {
  const int n = es.problem.N - 1;
  if (u.size() != n) throw Error(ErrorKind::precondition, "expand: expected N-1 interior samples");
  ComplexVector c(n);
  for (int l = 0; l < n; ++l) {
    const Eigen::VectorXd v = es.interior(l);
    const double weight = v.squaredNorm();
    if (weight == 0.0) throw Error(ErrorKind::numerical_failure, "expand: zero-norm eigenfunction");
    c(l) = v.cast<Complex>().dot(u) / weight;
  }
  return c;
}

ComplexVector reconstruct(const ComplexVector& coefficients, const SLEigensystem& es) {
  return es.modes.cast<Complex>() * coefficients;
}

VectorGrid expand_vector(const VectorGrid& f, const SLEigensystem& es) {
  const int N = es.problem.N;
  if (static_cast<int>(f.size()) != N + 1) throw Error(ErrorKind::precondition, "expand_vector: grid must have N+1 nodes");
  const Eigen::Index m = f.front().size();
  // Interior samples as an (N-1) x m matrix; each column expands independently.
  ComplexMatrix samples(N - 1, m);
  for (int i = 1; i < N; ++i) {
    if (f[static_cast<std::size_t>(i)].size() != m) throw Error(ErrorKind::precondition, "expand_vector: ragged grid");
    samples.row(i - 1) = f[static_cast<std::size_t>(i)].transpose();
  }
  VectorGrid out(static_cast<std::size_t>(N - 1));
  for (int l = 0; l < N - 1; ++l) {
    const Eigen::VectorXd v = es.interior(l);
    out[static_cast<std::size_t>(l)] = (samples.transpose() * v.cast<Complex>()) / v.squaredNorm();
  }
  return out;
}

}  // namespace descwave::sturm
