#include "descwave/matfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "descwave/error.hpp"

namespace descwave::matfun {

namespace {

Eigen::VectorXd singular_values(const ComplexMatrix& a) {
  if (a.size() == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues();
}

Eigen::Index count_above(const Eigen::VectorXd& sv, double threshold) {
  return static_cast<Eigen::Index>((sv.array() > threshold).count());
}

struct IndexInfo {
  int index = 0;
  Eigen::Index rank_at_index = 0;
};

IndexInfo index_and_rank(const ComplexMatrix& a, double rank_tol) {
  const Eigen::Index m = a.rows();
  if (m == 0) return {};
  const double norm2 = singular_values(a)(0);
  const double floor = static_cast<double>(m) * rank_tol;

  Eigen::Index prev_rank = m;
  ComplexMatrix power = ComplexMatrix::Identity(m, m);
  double scale = 1.0;
  for (int k = 1; k <= m + 1; ++k) {
    power = power * a;
    scale *= norm2;
    const Eigen::Index rank = scale == 0.0 ? 0 : count_above(singular_values(power), floor * scale);
    if (rank == prev_rank) return {k - 1, rank};
    prev_rank = rank;
  }
  return {static_cast<int>(m), prev_rank};
}

// Swap the adjacent diagonal entries k, k+1 of the upper-triangular Schur
// factor t, keeping a = u t u^* intact.
void swap_adjacent(ComplexMatrix& t, ComplexMatrix& u, Eigen::Index k) {
  const Complex a = t(k, k);
  const Complex c = t(k + 1, k + 1);
  Eigen::JacobiRotation<Complex> rot;
  rot.makeGivens(t(k, k + 1), c - a);
  t.applyOnTheLeft(k, k + 1, rot.adjoint());
  t.applyOnTheRight(k, k + 1, rot);
  u.applyOnTheRight(k, k + 1, rot);
  t(k + 1, k) = Complex(0.0);
  t(k, k) = c;
  t(k + 1, k + 1) = a;
}

// Solve t11 x - x t22 = rhs with t11, t22 upper triangular.
ComplexMatrix solve_triangular_sylvester(const ComplexMatrix& t11, const ComplexMatrix& t22,
                                         const ComplexMatrix& rhs) {
  const Eigen::Index p = t11.rows();
  const Eigen::Index q = t22.rows();
  const double scale = std::max(t11.norm(), t22.norm());
  ComplexMatrix x(p, q);
  for (Eigen::Index j = 0; j < q; ++j) {
    ComplexVector col = rhs.col(j);
    if (j > 0) col += x.leftCols(j) * t22.col(j).head(j);
    ComplexMatrix shifted = t11;
    shifted.diagonal().array() -= t22(j, j);
    const double pivot = shifted.diagonal().cwiseAbs().minCoeff();
    if (pivot <= 1e-14 * std::max(scale, 1e-300)) {
      throw Error(ErrorKind::numerical_failure,
                  "core-nilpotent split: core and nilpotent spectra are not separated");
    }
    x.col(j) = shifted.triangularView<Eigen::Upper>().solve(col);
  }
  return x;
}

ComplexMatrix upper_triangular_inverse(const ComplexMatrix& t) {
  return t.triangularView<Eigen::Upper>().solve(ComplexMatrix::Identity(t.rows(), t.cols()));
}

}  // namespace

ComplexMatrix CoreNilpotentDecomposition::reconstruct() const {
  const Eigen::Index p = core_dim();
  const Eigen::Index q = nilpotent_dim();
  ComplexMatrix block = ComplexMatrix::Zero(p + q, p + q);
  block.topLeftCorner(p, p) = core;
  block.bottomRightCorner(q, q) = nilpotent;
  return basis * block * basis_inv;
}

Eigen::Index numerical_rank(const ComplexMatrix& a, double rank_tol) {
  if (a.size() == 0) return 0;
  const Eigen::VectorXd sv = singular_values(a);
  const double threshold = static_cast<double>(std::max(a.rows(), a.cols())) * rank_tol * sv(0);
  return sv(0) == 0.0 ? 0 : count_above(sv, threshold);
}

int matrix_index(const ComplexMatrix& a, double rank_tol) { return index_and_rank(a, rank_tol).index; }

Eigen::Index core_rank(const ComplexMatrix& a, double rank_tol) { return index_and_rank(a, rank_tol).rank_at_index; }

CoreNilpotentDecomposition core_nilpotent(const ComplexMatrix& a, double rank_tol) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::precondition, "core_nilpotent: matrix is not square");
  if (!a.allFinite()) throw Error(ErrorKind::precondition, "core_nilpotent: non-finite entries");
  const Eigen::Index m = a.rows();
  CoreNilpotentDecomposition out;
  if (m == 0) return out;

  const IndexInfo info = index_and_rank(a, rank_tol);
  const Eigen::Index p = info.rank_at_index;
  const Eigen::Index q = m - p;

  Eigen::ComplexSchur<ComplexMatrix> schur(a);
  if (schur.info() != Eigen::Success) throw Error(ErrorKind::numerical_failure, "core_nilpotent: Schur failed");
  ComplexMatrix t = schur.matrixT();
  ComplexMatrix u = schur.matrixU();
  t.triangularView<Eigen::StrictlyLower>().setZero();

  // The q smallest-modulus eigenvalues form the nilpotent cluster; bubble
  // them to the trailing block.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index l, Eigen::Index r) { return std::abs(t(l, l)) < std::abs(t(r, r)); });
  std::vector<bool> in_cluster(static_cast<std::size_t>(m), false);
  for (Eigen::Index c = 0; c < q; ++c) in_cluster[static_cast<std::size_t>(order[static_cast<std::size_t>(c)])] = true;

  for (bool swapped = true; swapped;) {
    swapped = false;
    for (Eigen::Index k = 0; k + 1 < m; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      if (in_cluster[ku] && !in_cluster[ku + 1]) {
        swap_adjacent(t, u, k);
        in_cluster[ku] = false;
        in_cluster[ku + 1] = true;
        swapped = true;
      }
    }
  }

  const ComplexMatrix t11 = t.topLeftCorner(p, p);
  const ComplexMatrix t12 = t.topRightCorner(p, q);
  const ComplexMatrix t22 = t.bottomRightCorner(q, q);

  ComplexMatrix x = ComplexMatrix::Zero(p, q);
  if (p > 0 && q > 0) x = solve_triangular_sylvester(t11, t22, -t12);

  ComplexMatrix s = ComplexMatrix::Identity(m, m);
  ComplexMatrix s_inv = ComplexMatrix::Identity(m, m);
  s.topRightCorner(p, q) = x;
  s_inv.topRightCorner(p, q) = -x;

  out.basis = u * s;
  out.basis_inv = s_inv * u.adjoint();
  out.core = t11;
  out.nilpotent = t22;
  out.index = info.index;

  const double anorm = a.norm();
  const double residual = (a - out.reconstruct()).norm();
  if (residual > 1e-8 * std::max(anorm, 1e-300) && residual > 0.0) {
    throw Error(ErrorKind::numerical_failure, "core_nilpotent: decomposition residual too large");
  }
  return out;
}

ComplexMatrix drazin_from(const CoreNilpotentDecomposition& split) {
  const Eigen::Index p = split.core_dim();
  const Eigen::Index m = p + split.nilpotent_dim();
  if (p == 0) return ComplexMatrix::Zero(m, m);
  return split.basis.leftCols(p) * upper_triangular_inverse(split.core) * split.basis_inv.topRows(p);
}

ComplexMatrix drazin_inverse(const ComplexMatrix& a, double rank_tol) {
  return drazin_from(core_nilpotent(a, rank_tol));
}

ComplexMatrix group_style_inverse(const ComplexMatrix& a, double rank_tol) {
  const CoreNilpotentDecomposition cn = core_nilpotent(a, rank_tol);
  if (cn.index > 1) {
    throw Error(ErrorKind::precondition, "group inverse requires index <= 1 (nilpotent block must vanish)");
  }
  return drazin_from(cn);
}

ComplexMatrix moore_penrose(const ComplexMatrix& a, double rank_tol) {
  if (a.size() == 0) return ComplexMatrix::Zero(a.cols(), a.rows());
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double threshold = static_cast<double>(std::max(a.rows(), a.cols())) * rank_tol * sv(0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold && sv(i) > 0.0) inv(i) = 1.0 / sv(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

MitraSolution solve_mitra(const ComplexMatrix& a, const ComplexMatrix& ag, const ComplexVector& b, double tol) {
  const double anorm = a.norm();
  const double inner = (a * ag * a - a).norm();
  if (inner > tol * std::max(anorm, 1e-300) && inner > 0.0) {
    throw Error(ErrorKind::precondition, "solve_mitra: supplied matrix is not an inner inverse (A Ag A != A)");
  }
  MitraSolution out;
  out.particular = ag * b;
  out.residual = (a * out.particular - b).norm();
  const double scale = std::max({b.norm(), anorm * out.particular.norm(), 1e-300});
  out.consistent = out.residual <= tol * scale;
  out.null_projector = ComplexMatrix::Identity(ag.rows(), ag.rows()) - ag * a;
  return out;
}

Spectrum spectrum(const ComplexMatrix& a) {
  Spectrum s;
  if (a.size() == 0) return s;
  Eigen::ComplexEigenSolver<ComplexMatrix> es(a, false);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::numerical_failure, "spectrum: eigensolver failed");
  const ComplexVector& ev = es.eigenvalues();
  s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), [](const Complex& l, const Complex& r) {
    return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
  });
  return s;
}

double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const Complex& x : a) {
    auto best = std::min_element(b.begin(), b.end(),
                                 [&](const Complex& l, const Complex& r) { return std::abs(l - x) < std::abs(r - x); });
    worst = std::max(worst, std::abs(*best - x));
    b.erase(best);
  }
  return worst;
}

double condition_number(const ComplexMatrix& a) {
  const Eigen::VectorXd sv = singular_values(a);
  if (sv.size() == 0) return 1.0;
  const double smin = sv(sv.size() - 1);
  return smin == 0.0 ? std::numeric_limits<double>::infinity() : sv(0) / smin;
}

}  // namespace descwave::matfun
