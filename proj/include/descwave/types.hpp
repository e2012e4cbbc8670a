#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace descwave {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Samples of a C^m-valued function on the spatial nodes i = 0..N.
using VectorGrid = std::vector<ComplexVector>;

struct Tolerances {
  // Relative factor; absolute rank threshold is max(rows,cols) * rank * sigma_max.
  double rank = 1e-12;
  // Residual checks compare against residual * (1 + scale of the inputs).
  double residual = 1e-8;
  // gamma E + A counts as invertible below this 2-norm condition number.
  double cond_limit = 1e8;
  // Allowed growth of successive max-norms in the stability sweep.
  double eps_growth = 0.1;
};

// Vector 1-norm, the norm used for every grid magnitude reported by the library.
inline double norm1(const ComplexVector& x) { return x.cwiseAbs().sum(); }

// Induced matrix 1-norm (maximum absolute column sum).
inline double norm1(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace descwave
