#pragma once

// Regularisation of the singular pair (E, A) and the per-mode propagators of
//   E G(j+1) - (2E + rho A) G(j) + E G(j-1) = 0.

#include <string>
#include <vector>

#include "descwave/matfun.hpp"
#include "descwave/types.hpp"

namespace descwave::pencil {

/// Ehat = (gamma E + A)^-1 E, Ahat = (gamma E + A)^-1 A, the Drazin inverse of
/// Ehat, the core projector P = Ehat Ehat^D and D = Ehat^D Ahat.
struct RegularizedPencil {
  Complex gamma;
  ComplexMatrix shifted_inverse;
  ComplexMatrix Ehat;
  ComplexMatrix Ahat;
  ComplexMatrix EhatD;
  ComplexMatrix P;
  ComplexMatrix D;
  matfun::CoreNilpotentDecomposition ehat_split;

  Eigen::Index dim() const { return Ehat.rows(); }
};

struct ModePropagators {
  int mode = 0;
  double rho = 0.0;
  ComplexMatrix Z0;
  ComplexMatrix Z1;
};

struct Admissibility {
  bool ok = true;
  std::vector<std::string> reasons;
};

struct Condition45 {
  bool ok = false;
  matfun::Spectrum spectrum;
};

/// First candidate shift (1, -1, 2, -2, i, -i, 10, -10, ... scaled by
/// ||A||/||E||) with cond(gamma E + A) below cond_limit.
/// Throws ErrorKind::pencil_singular when none qualifies.
Complex find_gamma(const ComplexMatrix& E, const ComplexMatrix& A, double cond_limit = 1e8);

RegularizedPencil regularize(const ComplexMatrix& E, const ComplexMatrix& A, Complex gamma,
                             double rank_tol = 1e-12, double cond_limit = 1e8);

// ok iff D = Ehat^D Ahat is not nilpotent.
Condition45 check_condition_45(const RegularizedPencil& rp, double rank_tol = 1e-12);

/// Eigenvalues of D treated as nonzero (modulus above the relative zero level).
std::vector<Complex> nonzero_spectrum(const RegularizedPencil& rp);

Admissibility rho_admissible(double rho, const RegularizedPencil& rp, double lambda_max, double r,
                             double tol = 1e-10);

/// Z0 = P+(D) P and Z1 = P-(D) P with P+-(D) = I + rho/2 D +- sqrt((I + rho/2 D)^2 - I).
/// Throws ErrorKind::precondition when rho violates rho d (1 + rho d / 4) != 0.
ModePropagators make_propagators(const RegularizedPencil& rp, double rho, int mode = 0);

// rho = -r^2 lambda_l.
ModePropagators build_propagators(const RegularizedPencil& rp, double lambda_l, double r, int mode = 0);

/// G(j) = Z0^j P l1 + Z1^j P l2 for j = 0..j_max.
std::vector<ComplexVector> solve_matrix_difference(const RegularizedPencil& rp, const ModePropagators& mp,
                                                   const ComplexVector& l1, const ComplexVector& l2, int j_max);

// Scalar images P+(d), P-(d) of one spectral point.
std::pair<Complex, Complex> scalar_roots(double rho, Complex d);

}  // namespace descwave::pencil
