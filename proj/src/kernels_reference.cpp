#include <algorithm>

#include "descwave/error.hpp"
#include "descwave/kernels.hpp"

namespace descwave::kernels::reference {

ComplexMatrix superpose(const std::vector<ComplexMatrix>& temporal, const Eigen::MatrixXd& spatial, int N, int M) {
  if (spatial.rows() != N + 1 || spatial.cols() != static_cast<Eigen::Index>(temporal.size())) {
    throw Error(ErrorKind::precondition, "superpose: spatial factor must be (N+1) x modes");
  }
  const Eigen::Index m = temporal.empty() ? 0 : temporal.front().rows();
  ComplexMatrix U = ComplexMatrix::Zero(m, static_cast<Eigen::Index>(N + 1) * (M + 1));
  for (int j = 0; j <= M; ++j) {
    for (int i = 0; i <= N; ++i) {
      const Eigen::Index c = static_cast<Eigen::Index>(j) * (N + 1) + i;
      for (std::size_t l = 0; l < temporal.size(); ++l) {
        const double v = spatial(i, static_cast<Eigen::Index>(l));
        for (Eigen::Index q = 0; q < m; ++q) U(q, c) += temporal[l](q, j) * v;
      }
    }
  }
  return U;
}

double interior_residual(const ComplexMatrix& U, const ComplexMatrix& E, const ComplexMatrix& A, double r, int N,
                         int M) {
  const ComplexMatrix r2A = (r * r) * A;
  const ComplexMatrix center = 2.0 * (E - r2A);
  const Eigen::Index stride = N + 1;
  double worst = 0.0;
  for (int j = 1; j < M; ++j) {
    for (int i = 1; i < N; ++i) {
      const Eigen::Index at = j * stride + i;
      const ComplexVector res = r2A * (U.col(at + 1) + U.col(at - 1)) + center * U.col(at) -
                                E * (U.col(at + stride) + U.col(at - stride));
      worst = std::max(worst, norm1(res));
    }
  }
  return worst;
}

}  // namespace descwave::kernels::reference
