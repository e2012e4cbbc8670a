#pragma once

// Separated solution of the discrete scheme
//   r^2 A (U(i+1,j) + U(i-1,j)) + 2 (E - r^2 A) U(i,j) - E (U(i,j+1) + U(i,j-1)) = 0
// with the boundary rows at i = 0, N and the two initial layers, as a sum of
// Sturm-Liouville modes times propagated temporal vectors.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "descwave/pencil.hpp"
#include "descwave/problem.hpp"
#include "descwave/sturm.hpp"

namespace descwave::solver {

VectorGrid discretize(const std::function<ComplexVector(double)>& f, int N, Eigen::Index m);
VectorGrid discretize(const VectorGrid& grid, int N, Eigen::Index m);

struct ModeCoefficients {
  ComplexVector P;
  ComplexVector Q;
  ComplexVector F_l;
  ComplexVector G_l;
  bool consistent = false;
  double residual = 0.0;  // max of the two solvability residuals
  bool group_inverse = false;
};

/// Coefficients of G(j) = Z0^j P P_l + Z1^j P Q_l, fixed by G(0) = F_l and
/// G(1) = F_l + k G_l. K = (Z1 - Z0) P and
///   K P_l = (Z1 - I) F_l - k G_l,   K Q_l = k G_l - (Z0 - I) F_l.
/// With an inner inverse K^G, P_l = K^G b_P + w/2 and Q_l = K^G b_Q + w/2 where
/// w = (I - K^G K) F_l carries the part of F_l on which K vanishes.
/// `scale` is the absolute size the solvability residual is measured against.
ModeCoefficients mode_coefficients(const ComplexVector& F_l, const ComplexVector& G_l,
                                   const pencil::RegularizedPencil& rp, const pencil::ModePropagators& mp, double k,
                                   double tol, double scale, double rank_tol = 1e-12);

// Throws ErrorKind::hypothesis_violation when the systems are inconsistent.
ModeCoefficients mode_coefficients(int l, const sturm::SLEigensystem& es, const pencil::RegularizedPencil& rp,
                                   const pencil::ModePropagators& mp, const VectorGrid& F, const VectorGrid& Gdata,
                                   double k, double tol = 1e-8);

struct Mode {
  int l = 0;  // 0-based; lambda_l is es.eigenvalues(l)
  double lambda = 0.0;
  pencil::ModePropagators propagators;
  ModeCoefficients coefficients;
};

/// U(i,j) for 0 <= i <= N, 0 <= j <= M, stored as column j (N+1) + i of an
/// m x (N+1)(M+1) matrix.
struct DiscreteSolution {
  int N = 0;
  int M = 0;
  ComplexMatrix U;
  std::vector<Mode> modes;
  bool trivial = false;  // D nilpotent: only the zero solution is produced

  auto at(int i, int j) const { return U.col(static_cast<Eigen::Index>(j) * (N + 1) + i); }
  double max_norm() const;
};

struct Prepared {
  pencil::RegularizedPencil rp;
  sturm::SLEigensystem es;
};

Prepared prepare(const MixedProblem& problem);

// Propagators and coefficients for every mode; modes run in parallel.
std::vector<Mode> compute_modes(const MixedProblem& problem, const Prepared& prep);

DiscreteSolution assemble(const MixedProblem& problem, const sturm::SLEigensystem& es,
                          const pencil::RegularizedPencil& rp, const std::vector<Mode>& modes);

// prepare + compute_modes + assemble; a trivial zero solution when D is nilpotent.
DiscreteSolution solve(const MixedProblem& problem);

struct SchemeResidual {
  double interior = 0.0;
  double boundary0 = 0.0;
  double boundaryN = 0.0;
  double init0 = 0.0;
  double init1 = 0.0;

  double max() const;
};

SchemeResidual scheme_residual(const DiscreteSolution& sol, const MixedProblem& problem);
// Same measures for a raw grid laid out like DiscreteSolution::U.
SchemeResidual scheme_residual(const ComplexMatrix& U, int M, const MixedProblem& problem);

// residual tolerance * (1 + max(max_i ||F(i)||, max_i ||G(i)||)).
double residual_threshold(const MixedProblem& problem);

struct SweepRow {
  double k = 0.0;
  int M = 0;
  double max_norm = 0.0;
  std::optional<std::string> error;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<double> ratios;
  bool bounded = false;
};

/// Halves k `halvings` times with M k = T and h fixed. bounded iff every row
/// succeeded and every successive max-norm ratio is at most 1 + eps_growth.
SweepResult stability_sweep(const MixedProblem& problem, int halvings);

// peak = max_{j <= M} ||Z^j||_2 and the exponent S with peak = exp(T S),
// T = M k. A stable propagator keeps S bounded as k is halved.
struct PowerEnvelope {
  double peak = 0.0;
  double S = 0.0;
};
PowerEnvelope power_envelope(const ComplexMatrix& Z, int M, double k);

}  // namespace descwave::solver
