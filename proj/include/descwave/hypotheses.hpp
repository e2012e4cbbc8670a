#pragma once

// Checks of every hypothesis the separated solution relies on: the boundary
// coupling matrix, data in its kernel and in the core of Ehat, invariance of
// the kernel under D, and per-mode admissibility of rho.

#include <string>
#include <vector>

#include "descwave/pencil.hpp"
#include "descwave/problem.hpp"

namespace descwave::hypotheses {

/// G = (alpha A1 - A2 ; beta B1 - B2), a 2m x m matrix.
struct CouplingMatrix {
  ComplexMatrix G;
  double alpha = 0.0;
  double beta = 0.0;

  Eigen::Index m() const { return G.cols(); }
};

enum class Severity { fatal, warning };

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  std::string detail;
  Severity severity = Severity::fatal;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool overall_pass() const;
  bool has_warning() const;
  const CheckResult* find(const std::string& name) const;
  // Names of failed fatal checks.
  std::vector<std::string> failed() const;
};

struct RankInfo {
  Eigen::Index rank = 0;
  bool deficient = false;
  double smallest = 0.0;  // m-th singular value (0 when fewer than m exist)
};

struct InvarianceResult {
  bool pass = false;
  double residual = 0.0;         // ||G D (I - G^+ G)||
  bool kernel_pass = false;
  double kernel_residual = 0.0;  // ||G D K||, K an orthonormal basis of Ker G
};

CouplingMatrix build_G(double alpha, double beta, const BoundaryConditions& bc);

RankInfo rank_deficiency(const CouplingMatrix& g, double rank_tol = 1e-12);

// Orthonormal basis of Ker G (m x (m - rank)).
ComplexMatrix kernel_basis(const CouplingMatrix& g, double rank_tol = 1e-12);

/// kernel-F, kernel-G, projector-F, projector-G over i = 0..N. Each residual
/// is compared with tol * (1 + scale), scale the size of the quantity involved.
std::vector<CheckResult> check_data_conditions(const pencil::RegularizedPencil& rp, const CouplingMatrix& g,
                                               const VectorGrid& F, const VectorGrid& Gdata, double tol = 1e-8);

InvarianceResult check_invariance(const ComplexMatrix& D, const CouplingMatrix& g, double rank_tol = 1e-12,
                                  double tol = 1e-8);
InvarianceResult check_invariance(const pencil::RegularizedPencil& rp, const CouplingMatrix& g,
                                  double rank_tol = 1e-12, double tol = 1e-8);

ValidationReport validate_all(const MixedProblem& problem);

}  // namespace descwave::hypotheses
