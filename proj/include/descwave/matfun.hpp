#pragma once

// Dense complex linear-algebra kernel: generalized inverses, the
// core-nilpotent split, the principal square root and spectra.

#include <vector>

#include "descwave/types.hpp"

namespace descwave::matfun {

/// Similarity A = basis * blockdiag(core, nilpotent) * basis_inv with core
/// invertible (p x p) and nilpotent of index `index` (q x q).
///
/// The blocks come from a reordered complex Schur form, so `core` and
/// `nilpotent` are upper triangular and `basis` is a unitary factor times a
/// unit block upper-triangular Sylvester correction.
struct CoreNilpotentDecomposition {
  ComplexMatrix basis;
  ComplexMatrix basis_inv;
  ComplexMatrix core;
  ComplexMatrix nilpotent;
  int index = 0;

  Eigen::Index core_dim() const { return core.rows(); }
  Eigen::Index nilpotent_dim() const { return nilpotent.rows(); }

  ComplexMatrix reconstruct() const;
};

/// Eigenvalues with multiplicity, sorted by real part then imaginary part.
struct Spectrum {
  std::vector<Complex> eigenvalues;

  std::size_t size() const { return eigenvalues.size(); }
};

// Numerical rank: singular values above max(rows,cols) * rank_tol * sigma_max.
Eigen::Index numerical_rank(const ComplexMatrix& a, double rank_tol = 1e-12);

// Index of A: smallest k with rank(A^k) == rank(A^{k+1}). Powers are ranked
// against the noise floor max(rows,cols) * rank_tol * ||A||_2^k.
int matrix_index(const ComplexMatrix& a, double rank_tol = 1e-12);

// rank(A^k) at k = index(A): the dimension of the core block. Zero iff A is
// numerically nilpotent.
Eigen::Index core_rank(const ComplexMatrix& a, double rank_tol = 1e-12);

CoreNilpotentDecomposition core_nilpotent(const ComplexMatrix& a, double rank_tol = 1e-12);

ComplexMatrix drazin_inverse(const ComplexMatrix& a, double rank_tol = 1e-12);

// T blockdiag(C^-1, 0) T^-1 from an existing split.
ComplexMatrix drazin_from(const CoreNilpotentDecomposition& split);

/// Group inverse T blockdiag(C^-1, 0) T^-1; an inner inverse (A A^G A = A).
/// Throws ErrorKind::precondition when index(A) > 1.
ComplexMatrix group_style_inverse(const ComplexMatrix& a, double rank_tol = 1e-12);

ComplexMatrix moore_penrose(const ComplexMatrix& a, double rank_tol = 1e-12);

struct MitraSolution {
  bool consistent = false;
  double residual = 0.0;  // ||A Ag b - b||
  ComplexVector particular;
  ComplexMatrix null_projector;  // I - Ag A
};

/// Solvability test and particular solution of A x = b from an inner inverse.
/// Every solution is particular + null_projector * z.
/// Throws ErrorKind::precondition if A Ag A != A to `tol` (relative).
MitraSolution solve_mitra(const ComplexMatrix& a, const ComplexMatrix& ag, const ComplexVector& b,
                          double tol = 1e-10);

/// Principal square root by the Schur recurrence. Zero eigenvalues map to a
/// zero root; eigenvalues on the negative real axis take the root with
/// positive imaginary part.
ComplexMatrix principal_sqrt(const ComplexMatrix& m);

Spectrum spectrum(const ComplexMatrix& a);

// Greedy multiset matching; returns the largest pairwise distance, or +inf
// when sizes differ.
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b);

// 2-norm condition number; +inf when singular.
double condition_number(const ComplexMatrix& a);

}  // namespace descwave::matfun
