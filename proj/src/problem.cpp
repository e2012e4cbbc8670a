#include "descwave/problem.hpp"

#include <algorithm>
#include <string>

#include "descwave/error.hpp"

namespace descwave {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::input, what);
}

void require_square(const ComplexMatrix& a, Eigen::Index m, const char* name) {
  require(a.rows() == m && a.cols() == m, std::string(name) + " must be " + std::to_string(m) + " x " + std::to_string(m));
  require(a.allFinite(), std::string(name) + " has non-finite entries");
}

void require_grid(const VectorGrid& g, int N, Eigen::Index m, const char* name) {
  require(static_cast<int>(g.size()) == N + 1, std::string(name) + " must have N+1 nodes");
  for (const ComplexVector& v : g) {
    require(v.size() == m, std::string(name) + " entries must have m components");
    require(v.allFinite(), std::string(name) + " has non-finite entries");
  }
}

}  // namespace

void MixedProblem::validate() const {
  const Eigen::Index n = E.rows();
  require(n > 0, "m must be positive");
  require_square(E, n, "E");
  require_square(A, n, "A");
  require_square(bc.A1, n, "A1");
  require_square(bc.A2, n, "A2");
  require_square(bc.B1, n, "B1");
  require_square(bc.B2, n, "B2");
  require(N >= 3, "N must be at least 3");
  require(std::isfinite(alpha) && std::isfinite(beta), "alpha and beta must be finite");
  require(std::isfinite(k) && k > 0.0, "k must be positive");
  require(std::isfinite(T) && T > 0.0, "T must be positive");
  require(steps() >= 1, "T / k must round to at least one step");
  require_grid(F, N, n, "F");
  require_grid(G, N, n, "G");
  require(tol.rank > 0.0 && tol.residual > 0.0 && tol.cond_limit > 1.0 && tol.eps_growth > 0.0,
          "tolerances must be positive");
}

double data_scale(const MixedProblem& p) {
  double s = 0.0;
  for (const ComplexVector& v : p.F) s = std::max(s, norm1(v));
  for (const ComplexVector& v : p.G) s = std::max(s, norm1(v));
  return s;
}

}  // namespace descwave
