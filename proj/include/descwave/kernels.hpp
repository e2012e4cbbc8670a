#pragma once

// Grid kernels of the solver. The default versions use OpenMP; the
// reference:: twins are plain serial loops with the same summation order
// and must agree bit for bit.

#include <vector>

#include "descwave/types.hpp"

namespace descwave::kernels {

/// U(:, j (N+1) + i) = sum_l temporal[l](:, j) * spatial(i, l), summed in
/// ascending l. temporal[l] is m x (M+1), spatial is (N+1) x L.
ComplexMatrix superpose(const std::vector<ComplexMatrix>& temporal, const Eigen::MatrixXd& spatial, int N, int M);

/// max over 0 < i < N, 0 < j < M of
///   || r^2 A (U(i+1,j) + U(i-1,j)) + 2 (E - r^2 A) U(i,j) - E (U(i,j+1) + U(i,j-1)) ||_1.
double interior_residual(const ComplexMatrix& U, const ComplexMatrix& E, const ComplexMatrix& A, double r, int N,
                         int M);

// Number of threads OpenMP would use for the kernels.
int max_threads();

namespace reference {

ComplexMatrix superpose(const std::vector<ComplexMatrix>& temporal, const Eigen::MatrixXd& spatial, int N, int M);

double interior_residual(const ComplexMatrix& U, const ComplexMatrix& E, const ComplexMatrix& A, double r, int N,
                         int M);

}  // namespace reference

}  // namespace descwave::kernels
