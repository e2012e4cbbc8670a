#pragma once

// Random instances with known structure, shared by the unit and acceptance tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "descwave/builtin.hpp"
#include "descwave/problem.hpp"
#include "descwave/problem_io.hpp"
#include "descwave/sturm.hpp"

namespace testsupport {

using descwave::Complex;
using descwave::ComplexMatrix;
using descwave::ComplexVector;
using descwave::MixedProblem;
using descwave::VectorGrid;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double normal() { return std::normal_distribution<double>()(gen_); }
  Complex cnormal() { return {normal(), normal()}; }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  Complex on_annulus(double rmin, double rmax) { return std::polar(uniform(rmin, rmax), uniform(0.0, 2.0 * M_PI)); }

 private:
  std::mt19937_64 gen_;
};

inline ComplexMatrix random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c) {
  ComplexMatrix a(r, c);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.cnormal();
  return a;
}

inline ComplexVector random_vector(Rng& rng, Eigen::Index n) { return random_matrix(rng, n, 1); }

inline ComplexMatrix random_unitary(Rng& rng, Eigen::Index n) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(rng, n, n));
  return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

// U diag(s) V^* with singular values spread over [1, cond].
inline ComplexMatrix well_conditioned(Rng& rng, Eigen::Index n, double cond) {
  Eigen::VectorXd s(n);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = n == 1 ? 1.0 : std::pow(cond, static_cast<double>(i) / (n - 1));
  return random_unitary(rng, n) * s.cast<Complex>().asDiagonal() * random_unitary(rng, n).adjoint();
}

// Block-diagonal nilpotent matrix of order q whose largest Jordan block is `index`.
inline ComplexMatrix nilpotent_blocks(Rng& rng, int q, int index) {
  ComplexMatrix n = ComplexMatrix::Zero(q, q);
  int at = 0;
  bool first = true;
  while (at < q) {
    int size = first ? index : rng.integer(1, index);
    size = std::min(size, q - at);
    for (int i = 0; i + 1 < size; ++i) n(at + i, at + i + 1) = 1.0;
    at += size;
    first = false;
  }
  return n;
}

struct JordanCase {
  ComplexMatrix A;
  int index = 0;
  Eigen::Index core = 0;
};

/// A = S blockdiag(C, Nil) S^-1 with C diagonal (|eigenvalues| in [0.7, 1.4]),
/// Nil nilpotent of the requested index and cond(S) <= 5.
inline JordanCase random_jordan(Rng& rng, int m, int index) {
  const int q = index == 0 ? 0 : rng.integer(index, m);
  const int p = m - q;
  ComplexMatrix J = ComplexMatrix::Zero(m, m);
  for (int i = 0; i < p; ++i) J(i, i) = rng.on_annulus(0.7, 1.4);
  if (q > 0) J.bottomRightCorner(q, q) = nilpotent_blocks(rng, q, index);
  const ComplexMatrix S = well_conditioned(rng, m, 5.0);
  return {S * J * S.inverse(), q == 0 ? 0 : index, p};
}

struct PencilCase {
  ComplexMatrix E;
  ComplexMatrix A;
  std::vector<Complex> core;  // eigenvalues of D on the core
  int q = 0;                  // nilpotent (infinite-eigenvalue) dimension
};

/// E = T blockdiag(I, Nil) S, A = T blockdiag(Lambda, I) S, so the pencil is
/// regular, D = Ehat^D Ahat has spectrum Lambda plus q zeros. With
/// real_positive the core eigenvalues are real in [0.5, 2].
inline PencilCase random_pencil(Rng& rng, int m, bool real_positive) {
  const int q = rng.integer(1, m - 1);
  const int p = m - q;
  const int index = rng.integer(1, std::min(q, 3));
  PencilCase pc;
  pc.q = q;
  ComplexMatrix JE = ComplexMatrix::Zero(m, m);
  ComplexMatrix JA = ComplexMatrix::Zero(m, m);
  for (int i = 0; i < p; ++i) {
    const Complex lambda = real_positive ? Complex(rng.uniform(0.5, 2.0), 0.0) : rng.on_annulus(0.5, 2.0);
    pc.core.push_back(lambda);
    JE(i, i) = 1.0;
    JA(i, i) = lambda;
  }
  JE.bottomRightCorner(q, q) = nilpotent_blocks(rng, q, index);
  JA.bottomRightCorner(q, q) = ComplexMatrix::Identity(q, q);
  const ComplexMatrix T = well_conditioned(rng, m, 4.0);
  const ComplexMatrix S = well_conditioned(rng, m, 4.0);
  pc.E = T * JE * S;
  pc.A = T * JA * S;
  return pc;
}

inline descwave::io::ProblemSpec example(const std::string& name) {
  return descwave::io::parse_spec(descwave::builtin::example_spec(name));
}

/// Grid over i = 0..N from interior values u(i) (one column per node, i = 1..N-1
/// used), with the end nodes replaced by the SL boundary extension.
inline VectorGrid completed_grid(const std::vector<ComplexVector>& nodes, int N, double alpha, double beta) {
  VectorGrid g = nodes;
  const double an = alpha * N;
  const double bn = beta * N;
  g[0] = (-an / (1.0 - an)) * g[1];
  g[static_cast<std::size_t>(N)] = (bn / (1.0 + bn)) * g[static_cast<std::size_t>(N - 1)];
  return g;
}

inline double grid_max_norm(const VectorGrid& g) {
  double s = 0.0;
  for (const ComplexVector& v : g) s = std::max(s, descwave::norm1(v));
  return s;
}

}  // namespace testsupport
