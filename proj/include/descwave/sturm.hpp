#pragma once

// Discrete Sturm-Liouville problem
//   h(i+1) - (2 - lambda) h(i) + h(i-1) = 0,   0 < i < N
//   h(0) + alpha N (h(1) - h(0)) = 0
//   h(N) + beta  N (h(N) - h(N-1)) = 0
// and eigenfunction expansions over its N-1 eigenpairs.

#include "descwave/types.hpp"

namespace descwave::sturm {

struct SLProblem {
  int N = 0;
  double alpha = 0.0;
  double beta = 0.0;

  // Throws ErrorKind::degenerate_boundary / precondition when not admissible.
  void validate() const;
};

/// Eigenpairs in ascending order. Column l of `modes` holds v_l(i) for
/// i = 0..N; the interior part (rows 1..N-1) has unit Euclidean norm and its
/// first nonzero entry is positive. Rows 0 and N are the boundary extension.
struct SLEigensystem {
  SLProblem problem;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd modes;

  int count() const { return static_cast<int>(eigenvalues.size()); }
  auto interior(int l) const { return modes.col(l).segment(1, problem.N - 1); }
};

// (N-1) x (N-1) tridiagonal matrix whose eigenproblem is the SL problem.
Eigen::MatrixXd build_sl_matrix(const SLProblem& p);

SLEigensystem solve_sl(const SLProblem& p);

// h(0) and h(N) from h(1) and h(N-1) through the boundary relations.
double extend_left(const SLProblem& p, double h1);
double extend_right(const SLProblem& p, double hn1);

/// Expansion coefficients c_l = sum_i v_l(i) u(i) / sum_i v_l(i)^2 of interior
/// samples u(1..N-1) (length N-1).
ComplexVector expand(const ComplexVector& u, const SLEigensystem& es);

/// Values sum_l c_l v_l(i) for i = 0..N.
ComplexVector reconstruct(const ComplexVector& coefficients, const SLEigensystem& es);

/// Componentwise expansion of a C^m grid over i = 0..N (only the interior
/// nodes are used). Entry l is the mode vector F_l.
VectorGrid expand_vector(const VectorGrid& f, const SLEigensystem& es);

}  // namespace descwave::sturm
