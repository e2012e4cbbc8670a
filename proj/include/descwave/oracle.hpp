#pragma once

// Formula-free references for the pipeline: direct time stepping of the
// scheme, a limit formula for the Drazin inverse and a dense SL eigensolve.

#include <string>

#include "descwave/problem.hpp"
#include "descwave/solver.hpp"
#include "descwave/sturm.hpp"

namespace descwave::oracle {

enum class StepMethod { explicit_nonsingular, projected_singular };

struct SteppedSolution {
  int N = 0;
  int M = 0;
  ComplexMatrix U;  // same layout as solver::DiscreteSolution::U
  StepMethod method = StepMethod::explicit_nonsingular;
  int inconsistent_at = -1;  // first level j whose step had no solution, -1 if none
  double worst_step_residual = 0.0;

  bool consistent() const { return inconsistent_at < 0; }
  auto at(int i, int j) const { return U.col(static_cast<Eigen::Index>(j) * (N + 1) + i); }
};

/// U(.,0) = F, U(.,1) = F + k G, then E^-1 applied to the stencil for the
/// interior and the two boundary rows solved for U(0,j+1), U(N,j+1).
/// Throws ErrorKind::precondition when E is singular and
/// ErrorKind::infeasible_boundary when a boundary row has no solution.
SteppedSolution step_nonsingular(const MixedProblem& problem);

/// Each level solves, for all of U(.,j+1) at once and in the minimum-norm
/// sense, the stencil premultiplied by (gamma E + A)^-1, the boundary rows and
/// the algebraic rows (I - Ehat Ehat^+) r^2 Ahat (U(i+1) - 2 U(i) + U(i-1)) = 0.
/// Stops at the first inconsistent level and records it.
SteppedSolution step_singular(const MixedProblem& problem);

struct DrazinLimit {
  ComplexMatrix value;
  int k = 0;
  bool reliable = true;
};

// A^D = A^k (A^(2k+1))^+ A^k with k the rank-sequence index of A.
DrazinLimit drazin_by_limit(const ComplexMatrix& a, double rank_tol = 1e-10);

// Dense nonsymmetric eigensolve of the SL matrix assembled from the
// recurrence with the boundary values eliminated.
sturm::SLEigensystem sl_dense_oracle(const sturm::SLProblem& p);

struct CrossCheck {
  double difference = 0.0;  // max over nodes of ||U_a - U_b||_1
  double scale = 0.0;       // max node norm of the separated solution
  bool agree = false;       // difference <= tol * max(scale, 1)
  bool residuals_pass = false;
  bool non_unique = false;  // disagree although both grids satisfy the scheme
};

CrossCheck compare(const solver::DiscreteSolution& sol, const SteppedSolution& stepped, const MixedProblem& problem,
                   double tol = 1e-6);

}  // namespace descwave::oracle
