#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "descwave/error.hpp"
#include "descwave/matfun.hpp"

namespace descwave::matfun {

namespace {

constexpr double kZeroEigenvalue = 1e-11;
constexpr double kZeroCoupling = 1e-9;

// Principal branch; the negative real axis maps to +i sqrt|t| regardless of
// the sign of a rounding-level imaginary part.
Complex principal_root(Complex t, double zero_tol) {
  if (std::abs(t) <= zero_tol) return Complex(0.0);
  Complex s = std::sqrt(t);
  if (std::abs(s.real()) <= 1e-14 * std::abs(s)) s = Complex(0.0, std::abs(s));
  return s;
}

}  // namespace

ComplexMatrix principal_sqrt(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::precondition, "principal_sqrt: matrix is not square");
  const Eigen::Index n = m.rows();
  if (n == 0) return m;
  const double scale = m.norm();
  if (scale == 0.0) return ComplexMatrix::Zero(n, n);

  Eigen::ComplexSchur<ComplexMatrix> schur(m);
  if (schur.info() != Eigen::Success) throw Error(ErrorKind::numerical_failure, "principal_sqrt: Schur failed");
  const ComplexMatrix& t = schur.matrixT();
  const double zero_tol = kZeroEigenvalue * scale;
  const double coupling_tol = kZeroCoupling * scale;

  ComplexMatrix r = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) r(i, i) = principal_root(t(i, i), zero_tol);

  // Column-oriented recurrence r_ij = (t_ij - sum r_ik r_kj) / (r_ii + r_jj).
  for (Eigen::Index j = 1; j < n; ++j) {
    for (Eigen::Index i = j - 1; i >= 0; --i) {
      Complex num = t(i, j);
      for (Eigen::Index k = i + 1; k < j; ++k) num -= r(i, k) * r(k, j);
      const Complex den = r(i, i) + r(j, j);
      if (den == Complex(0.0)) {
        if (std::abs(num) > coupling_tol) {
          throw Error(ErrorKind::numerical_failure,
                      "principal_sqrt: defective zero eigenvalue, no square root exists");
        }
        r(i, j) = Complex(0.0);
      } else {
        r(i, j) = num / den;
      }
    }
  }

  ComplexMatrix s = schur.matrixU() * r * schur.matrixU().adjoint();
  if (!s.allFinite()) throw Error(ErrorKind::numerical_failure, "principal_sqrt: non-finite result");
  return s;
}

}  // namespace descwave::matfun
