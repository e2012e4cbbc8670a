#include <random>

#include <benchmark/benchmark.h>

#include "descwave/kernels.hpp"

using descwave::ComplexMatrix;

namespace {

struct Fixture {
  std::vector<ComplexMatrix> temporal;
  Eigen::MatrixXd spatial;
  int N;
  int M;
};

Fixture make(int N, int M, int m) {
  std::mt19937 gen(7);
  std::normal_distribution<double> d;
  Fixture f{{}, Eigen::MatrixXd(N + 1, N - 1), N, M};
  for (int l = 0; l < N - 1; ++l) {
    ComplexMatrix t(m, M + 1);
    for (Eigen::Index c = 0; c < t.size(); ++c) t.data()[c] = {d(gen), d(gen)};
    f.temporal.push_back(t);
    for (int i = 0; i <= N; ++i) f.spatial(i, l) = d(gen);
  }
  return f;
}

void BM_superpose(benchmark::State& state) {
  const Fixture f = make(static_cast<int>(state.range(0)), 256, 8);
  for (auto _ : state) benchmark::DoNotOptimize(descwave::kernels::superpose(f.temporal, f.spatial, f.N, f.M));
}

void BM_superpose_reference(benchmark::State& state) {
  const Fixture f = make(static_cast<int>(state.range(0)), 256, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(descwave::kernels::reference::superpose(f.temporal, f.spatial, f.N, f.M));
  }
}

void BM_residual(benchmark::State& state) {
  const Fixture f = make(static_cast<int>(state.range(0)), 256, 8);
  const ComplexMatrix U = descwave::kernels::superpose(f.temporal, f.spatial, f.N, f.M);
  const ComplexMatrix E = ComplexMatrix::Identity(8, 8);
  const ComplexMatrix A = ComplexMatrix::Random(8, 8);
  for (auto _ : state) benchmark::DoNotOptimize(descwave::kernels::interior_residual(U, E, A, 0.5, f.N, f.M));
}

void BM_residual_reference(benchmark::State& state) {
  const Fixture f = make(static_cast<int>(state.range(0)), 256, 8);
  const ComplexMatrix U = descwave::kernels::superpose(f.temporal, f.spatial, f.N, f.M);
  const ComplexMatrix E = ComplexMatrix::Identity(8, 8);
  const ComplexMatrix A = ComplexMatrix::Random(8, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(descwave::kernels::reference::interior_residual(U, E, A, 0.5, f.N, f.M));
  }
}

}  // namespace

BENCHMARK(BM_superpose)->Arg(8)->Arg(32);
BENCHMARK(BM_superpose_reference)->Arg(8)->Arg(32);
BENCHMARK(BM_residual)->Arg(8)->Arg(32);
BENCHMARK(BM_residual_reference)->Arg(8)->Arg(32);

BENCHMARK_MAIN();
