#pragma once

// A concrete instance of the singular wave system
//   E u_tt = A u_xx,  0 < x < 1,
//   A1 u(0,t) + A2 u_x(0,t) = 0,  B1 u(1,t) + B2 u_x(1,t) = 0,
//   u(x,0) = f(x),  u_t(x,0) = g(x)
// on the grid x = i/N, t = j k.

#include <cmath>
#include <optional>

#include "descwave/types.hpp"

namespace descwave {

struct BoundaryConditions {
  ComplexMatrix A1;
  ComplexMatrix A2;
  ComplexMatrix B1;
  ComplexMatrix B2;
};

struct MixedProblem {
  ComplexMatrix E;
  ComplexMatrix A;
  BoundaryConditions bc;
  double alpha = 0.0;
  double beta = 0.0;
  int N = 0;
  double k = 0.0;
  double T = 0.0;
  VectorGrid F;  // u(i/N, 0), i = 0..N
  VectorGrid G;  // u_t(i/N, 0), i = 0..N
  std::optional<Complex> gamma;  // unset: pencil::find_gamma
  Tolerances tol;

  Eigen::Index m() const { return E.rows(); }
  int steps() const { return static_cast<int>(std::lround(T / k)); }
  double r() const { return k * N; }

  // Throws ErrorKind::input on inconsistent dimensions or non-positive sizes.
  void validate() const;
};

// max_i ||F(i)||_1 and max_i ||G(i)||_1 combined.
double data_scale(const MixedProblem& p);

}  // namespace descwave
