#include "descwave/pencil.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "descwave/error.hpp"

namespace descwave::pencil {

namespace {

// Relative level below which an eigenvalue of D is treated as zero.
constexpr double kZeroSpectrum = 1e-9;

}  // namespace

Complex find_gamma(const ComplexMatrix& E, const ComplexMatrix& A, double cond_limit) {
  if (E.rows() != E.cols() || A.rows() != A.cols() || E.rows() != A.rows()) {
    throw Error(ErrorKind::precondition, "find_gamma: E and A must be square and of equal size");
  }
  const double en = norm1(E);
  const double an = norm1(A);
  const double scale = (en > 0.0 && an > 0.0) ? an / en : 1.0;
  const Complex i(0.0, 1.0);
  const std::array<Complex, 20> candidates = {
      1.0, -1.0, 2.0, -2.0, i, -i, 10.0, -10.0, 0.5, -0.5,
      3.0, -3.0, 1.0 + i, 1.0 - i, -1.0 + i, -1.0 - i, 100.0, -100.0, 0.1, -0.1};
  for (const Complex& c : candidates) {
    const Complex gamma = c * scale;
    if (matfun::condition_number(gamma * E + A) < cond_limit) return gamma;
  }
  throw Error(ErrorKind::pencil_singular, "find_gamma: gamma E + A is singular for every candidate shift");
}

RegularizedPencil regularize(const ComplexMatrix& E, const ComplexMatrix& A, Complex gamma, double rank_tol,
                             double cond_limit) {
  const ComplexMatrix shifted = gamma * E + A;
  if (!(matfun::condition_number(shifted) < cond_limit)) {
    throw Error(ErrorKind::pencil_singular, "regularize: gamma E + A is numerically singular");
  }
  RegularizedPencil rp;
  rp.gamma = gamma;
  rp.shifted_inverse = shifted.partialPivLu().inverse();
  rp.Ehat = rp.shifted_inverse * E;
  rp.Ahat = rp.shifted_inverse * A;
  rp.ehat_split = matfun::core_nilpotent(rp.Ehat, rank_tol);
  rp.EhatD = matfun::drazin_from(rp.ehat_split);
  rp.P = rp.Ehat * rp.EhatD;
  rp.D = rp.EhatD * rp.Ahat;
  return rp;
}

Condition45 check_condition_45(const RegularizedPencil& rp, double rank_tol) {
  Condition45 out;
  out.spectrum = matfun::spectrum(rp.D);
  out.ok = matfun::core_rank(rp.D, rank_tol) > 0;
  return out;
}

std::vector<Complex> nonzero_spectrum(const RegularizedPencil& rp) {
  const matfun::Spectrum s = matfun::spectrum(rp.D);
  const double level = kZeroSpectrum * rp.D.norm();
  std::vector<Complex> out;
  for (const Complex& d : s.eigenvalues) {
    if (std::abs(d) > level) out.push_back(d);
  }
  return out;
}

std::pair<Complex, Complex> scalar_roots(double rho, Complex d) {
  const Complex c = 1.0 + 0.5 * rho * d;
  Complex s = std::sqrt(c * c - 1.0);
  if (std::abs(s.real()) <= 1e-14 * std::abs(s)) s = Complex(0.0, std::abs(s));
  return {c + s, c - s};
}

Admissibility rho_admissible(double rho, const RegularizedPencil& rp, double lambda_max, double r, double tol) {
  Admissibility out;
  if (rho == 0.0) {
    out.ok = false;
    out.reasons.emplace_back("rho = 0 violates rho d (1 + rho d / 4) != 0");
  }
  for (const Complex& d : nonzero_spectrum(rp)) {
    const Complex rd = rho * d;
    const double value = std::abs(rd) * std::abs(1.0 + 0.25 * rd);
    if (rho != 0.0 && value <= tol) {
      std::ostringstream msg;
      msg << "rho d (1 + rho d / 4) vanishes at d = " << d << " (|value| = " << value << ")";
      out.ok = false;
      out.reasons.push_back(msg.str());
    }
  }
  const double bound = std::abs(lambda_max) * r * r;
  if (std::abs(rho) > bound + tol * std::max(1.0, bound)) {
    std::ostringstream msg;
    msg << "|rho| = " << std::abs(rho) << " exceeds max|lambda| r^2 = " << bound;
    out.ok = false;
    out.reasons.push_back(msg.str());
  }
  return out;
}

ModePropagators make_propagators(const RegularizedPencil& rp, double rho, int mode) {
  const Admissibility adm = rho_admissible(rho, rp, std::abs(rho), 1.0);
  if (!adm.ok) throw Error(ErrorKind::precondition, "make_propagators: " + adm.reasons.front());

  const Eigen::Index m = rp.dim();
  const ComplexMatrix identity = ComplexMatrix::Identity(m, m);
  // (I + rho/2 D)^2 - I without the cancellation of the expanded square.
  const ComplexMatrix radicand = rho * rp.D + (0.25 * rho * rho) * (rp.D * rp.D);
  const ComplexMatrix root = matfun::principal_sqrt(radicand);
  const ComplexMatrix base = identity + (0.5 * rho) * rp.D;

  ModePropagators mp;
  mp.mode = mode;
  mp.rho = rho;
  mp.Z0 = (base + root) * rp.P;
  mp.Z1 = (base - root) * rp.P;
  return mp;
}

ModePropagators build_propagators(const RegularizedPencil& rp, double lambda_l, double r, int mode) {
  return make_propagators(rp, -r * r * lambda_l, mode);
}

std::vector<ComplexVector> solve_matrix_difference(const RegularizedPencil& rp, const ModePropagators& mp,
                                                   const ComplexVector& l1, const ComplexVector& l2, int j_max) {
  std::vector<ComplexVector> g;
  g.reserve(static_cast<std::size_t>(std::max(j_max, 0) + 1));
  ComplexVector a = rp.P * l1;
  ComplexVector b = rp.P * l2;
  for (int j = 0; j <= j_max; ++j) {
    g.emplace_back(a + b);
    a = mp.Z0 * a;
    b = mp.Z1 * b;
  }
  return g;
}

}  // namespace descwave::pencil
