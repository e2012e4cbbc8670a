#include "descwave/kernels.hpp"

#include <algorithm>

#include <omp.h>

#include "descwave/error.hpp"

namespace descwave::kernels {

namespace {

void check_shapes(const std::vector<ComplexMatrix>& temporal, const Eigen::MatrixXd& spatial, int N, int M) {
  if (spatial.rows() != N + 1 || spatial.cols() != static_cast<Eigen::Index>(temporal.size())) {
    throw Error(ErrorKind::precondition, "superpose: spatial factor must be (N+1) x modes");
  }
  for (const ComplexMatrix& t : temporal) {
    if (t.cols() != M + 1 || t.rows() != temporal.front().rows()) {
      throw Error(ErrorKind::precondition, "superpose: temporal factors must be m x (M+1)");
    }
  }
}

}  // namespace

int max_threads() { return omp_get_max_threads(); }

ComplexMatrix superpose(const std::vector<ComplexMatrix>& temporal, const Eigen::MatrixXd& spatial, int N, int M) {
  check_shapes(temporal, spatial, N, M);
  const Eigen::Index m = temporal.empty() ? 0 : temporal.front().rows();
  const Eigen::Index cols = static_cast<Eigen::Index>(N + 1) * (M + 1);
  const auto L = static_cast<std::ptrdiff_t>(temporal.size());
  ComplexMatrix U = ComplexMatrix::Zero(m, cols);

#pragma omp parallel for schedule(static)
  for (Eigen::Index c = 0; c < cols; ++c) {
    const Eigen::Index j = c / (N + 1);
    const Eigen::Index i = c % (N + 1);
    for (std::ptrdiff_t l = 0; l < L; ++l) {
      const double v = spatial(i, l);
      const ComplexMatrix& t = temporal[static_cast<std::size_t>(l)];
      for (Eigen::Index q = 0; q < m; ++q) U(q, c) += t(q, j) * v;
    }
  }
  return U;
}

double interior_residual(const ComplexMatrix& U, const ComplexMatrix& E, const ComplexMatrix& A, double r, int N,
                         int M) {
  const ComplexMatrix r2A = (r * r) * A;
  const ComplexMatrix center = 2.0 * (E - r2A);
  const Eigen::Index stride = N + 1;
  const Eigen::Index interior = static_cast<Eigen::Index>(N - 1) * std::max(M - 1, 0);
  double worst = 0.0;

#pragma omp parallel for schedule(static) reduction(max : worst)
  for (Eigen::Index c = 0; c < interior; ++c) {
    const Eigen::Index j = 1 + c / (N - 1);
    const Eigen::Index i = 1 + c % (N - 1);
    const Eigen::Index at = j * stride + i;
    const ComplexVector res = r2A * (U.col(at + 1) + U.col(at - 1)) + center * U.col(at) -
                              E * (U.col(at + stride) + U.col(at - stride));
    worst = std::max(worst, norm1(res));
  }
  return worst;
}

}  // namespace descwave::kernels
