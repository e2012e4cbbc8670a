#include "doctest.h"

#include "descwave/error.hpp"
#include "descwave/matfun.hpp"
#include "descwave/oracle.hpp"
#include "support.hpp"

using namespace descwave;
using namespace descwave::matfun;
using testsupport::Rng;

namespace {

ComplexMatrix cm(std::initializer_list<std::initializer_list<double>> rows) {
  ComplexMatrix a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double x : r) a(i, j++) = x;
    ++i;
  }
  return a;
}

double rel(const ComplexMatrix& diff, double scale) { return diff.norm() / std::max(scale, 1e-300); }

ComplexMatrix power(const ComplexMatrix& a, int k) {
  ComplexMatrix p = ComplexMatrix::Identity(a.rows(), a.cols());
  for (int j = 0; j < k; ++j) p = p * a;
  return p;
}

}  // namespace

TEST_SUITE("matfun") {
  TEST_CASE("core_nilpotent of the identity has no nilpotent part") {
    const CoreNilpotentDecomposition cn = core_nilpotent(ComplexMatrix::Identity(2, 2));
    CHECK(cn.core_dim() == 2);
    CHECK(cn.nilpotent_dim() == 0);
    CHECK(cn.index == 0);
    CHECK(rel(cn.core - ComplexMatrix::Identity(2, 2), 1.0) < 1e-14);
  }

  TEST_CASE("core_nilpotent of a Jordan block is all nilpotent") {
    const ComplexMatrix a = cm({{0, 1}, {0, 0}});
    const CoreNilpotentDecomposition cn = core_nilpotent(a);
    CHECK(cn.core_dim() == 0);
    CHECK(cn.nilpotent_dim() == 2);
    CHECK(cn.index == 2);
    CHECK(rel(cn.reconstruct() - a, 1.0) < 1e-14);
  }

  TEST_CASE("core_nilpotent recovers p, q, k of blockdiag(2, J2) in a random basis") {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix S = testsupport::well_conditioned(rng, 3, 10.0);
      const ComplexMatrix J = cm({{2, 0, 0}, {0, 0, 1}, {0, 0, 0}});
      const ComplexMatrix a = S * J * S.inverse();
      const CoreNilpotentDecomposition cn = core_nilpotent(a);
      CHECK(cn.core_dim() == 1);
      CHECK(cn.nilpotent_dim() == 2);
      CHECK(cn.index == 2);
      CHECK(std::abs(cn.core(0, 0) - 2.0) < 1e-10);
      CHECK(rel(cn.reconstruct() - a, a.norm()) < 1e-12);
      CHECK(power(cn.nilpotent, 2).norm() < 1e-10);
      CHECK(cn.nilpotent.norm() > 1e-3);
    }
  }

  TEST_CASE("invertible input has q = 0") {
    Rng rng(3);
    const ComplexMatrix a = testsupport::well_conditioned(rng, 4, 20.0);
    const CoreNilpotentDecomposition cn = core_nilpotent(a);
    CHECK(cn.nilpotent_dim() == 0);
    CHECK(cn.index == 0);
  }

  TEST_CASE("drazin_inverse special cases") {
    CHECK(rel(drazin_inverse(ComplexMatrix::Identity(3, 3)) - ComplexMatrix::Identity(3, 3), 1.0) < 1e-14);
    CHECK(drazin_inverse(cm({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}})).norm() == 0.0);
    Rng rng(5);
    const ComplexMatrix a = testsupport::well_conditioned(rng, 5, 10.0);
    CHECK(rel(drazin_inverse(a) - a.inverse(), a.inverse().norm()) < 1e-12);
  }

  TEST_CASE("Drazin axioms on random Jordan structures") {
    Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
      const int m = rng.integer(1, 8);
      const int index = rng.integer(0, std::min(3, m));
      const testsupport::JordanCase jc = testsupport::random_jordan(rng, m, index);
      const ComplexMatrix& a = jc.A;
      const ComplexMatrix x = drazin_inverse(a);
      CHECK(matrix_index(a) == jc.index);
      const double xs = std::max(x.norm(), 1.0);
      CHECK(rel(x * a * x - x, xs) < 1e-9);
      CHECK(rel(x * a - a * x, a.norm() * xs) < 1e-9);
      CHECK(rel(power(a, jc.index + 1) * x - power(a, jc.index), std::max(power(a, jc.index).norm(), 1.0)) < 1e-9);
    }
  }

  TEST_CASE("group inverse") {
    const ComplexMatrix d = cm({{2, 0}, {0, 0}});
    CHECK(rel(group_style_inverse(d) - cm({{0.5, 0}, {0, 0}}), 1.0) < 1e-14);
    const ComplexMatrix p = cm({{1, 1}, {0, 0}});
    const ComplexMatrix g = group_style_inverse(p);
    CHECK(rel(p * g * p - p, p.norm()) < 1e-12);
    Rng rng(9);
    const ComplexMatrix a = testsupport::well_conditioned(rng, 4, 10.0);
    CHECK(rel(group_style_inverse(a) - a.inverse(), a.inverse().norm()) < 1e-12);
    CHECK_THROWS_AS(group_style_inverse(cm({{0, 1}, {0, 0}})), Error);
  }

  TEST_CASE("Moore-Penrose identities") {
    CHECK(moore_penrose(ComplexMatrix::Zero(3, 2)).norm() == 0.0);
    CHECK(moore_penrose(ComplexMatrix::Zero(3, 2)).rows() == 2);
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      const int r = rng.integer(1, 8);
      const int c = rng.integer(1, 8);
      const int k = rng.integer(1, std::min(r, c));
      const ComplexMatrix a = testsupport::random_matrix(rng, r, k) * testsupport::random_matrix(rng, k, c);
      const ComplexMatrix x = moore_penrose(a);
      CHECK(numerical_rank(a) == k);
      CHECK(rel(a * x * a - a, a.norm()) < 1e-10);
      CHECK(rel(x * a * x - x, x.norm()) < 1e-10);
      CHECK(rel((a * x).adjoint() - a * x, 1.0) < 1e-10);
      CHECK(rel((x * a).adjoint() - x * a, 1.0) < 1e-10);
    }
    const ComplexMatrix sq = testsupport::well_conditioned(rng, 4, 5.0);
    CHECK(rel(moore_penrose(sq) - sq.inverse(), 1.0) < 1e-12);
  }

  TEST_CASE("pseudo-inverse of a coupling matrix with one nonzero column") {
    // G = (d e3^T ; 0): G^+ = G^* / sum |d_i|^2.
    ComplexMatrix g = ComplexMatrix::Zero(6, 3);
    g(0, 2) = 2.0;
    g(1, 2) = -1.0;
    g(2, 2) = 0.5;
    const double sum = 4.0 + 1.0 + 0.25;
    CHECK(rel(moore_penrose(g) - g.adjoint() / sum, 1.0) < 1e-14);
  }

  TEST_CASE("Mitra solvability") {
    const ComplexMatrix a = cm({{1, 0}, {0, 0}});
    const ComplexMatrix ag = moore_penrose(a);
    ComplexVector b(2);
    b << 2.0, 0.0;
    MitraSolution s = solve_mitra(a, ag, b);
    CHECK(s.consistent);
    CHECK(std::abs(s.particular(0) - 2.0) < 1e-15);
    CHECK(std::abs(s.particular(1)) < 1e-15);
    CHECK(rel(s.null_projector - cm({{0, 0}, {0, 1}}), 1.0) < 1e-15);
    b << 2.0, 1.0;
    CHECK_FALSE(solve_mitra(a, ag, b).consistent);
    CHECK_THROWS_AS(solve_mitra(a, ComplexMatrix::Zero(2, 2), b), Error);

    Rng rng(23);
    const ComplexMatrix r = testsupport::random_matrix(rng, 4, 2) * testsupport::random_matrix(rng, 2, 4);
    const ComplexVector rhs = r * testsupport::random_vector(rng, 4);
    s = solve_mitra(r, moore_penrose(r), rhs);
    CHECK(s.consistent);
    CHECK((r * s.particular - rhs).norm() <= 1e-10);
    // every member of the family solves the system
    const ComplexVector other = s.particular + s.null_projector * testsupport::random_vector(rng, 4);
    CHECK((r * other - rhs).norm() <= 1e-10);
  }

  TEST_CASE("principal square root") {
    CHECK(rel(principal_sqrt(ComplexMatrix::Identity(3, 3)) - ComplexMatrix::Identity(3, 3), 1.0) < 1e-15);
    CHECK(rel(principal_sqrt(cm({{4, 0}, {0, 9}})) - cm({{2, 0}, {0, 3}}), 1.0) < 1e-15);

    // (1 + rho d / 2)^2 - 1 < 0: the root is i sqrt(1 - (1 + rho d/2)^2).
    const double rho = -1.3;
    const double d = 0.8;
    const double c = 1.0 + 0.5 * rho * d;
    ComplexMatrix m(1, 1);
    m(0, 0) = rho * d + 0.25 * rho * rho * d * d;
    const Complex s = principal_sqrt(m)(0, 0);
    CHECK(std::abs(s - Complex(0.0, std::sqrt(1.0 - c * c))) < 1e-15);

    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = rng.integer(1, 6);
      const ComplexMatrix a = testsupport::random_matrix(rng, n, n);
      const ComplexMatrix root = principal_sqrt(a);
      CHECK(rel(root * root - a, a.norm()) < 1e-9);
      CHECK(rel(root * a - a * root, a.norm() * root.norm()) < 1e-9);
      for (const Complex& e : spectrum(root).eigenvalues) CHECK(e.real() >= -1e-10);
    }
  }

  TEST_CASE("square root with a zero eigenvalue maps it to zero") {
    const ComplexMatrix m = cm({{0, 0, 0}, {0, 4, 0}, {0, 0, 0}});
    const ComplexMatrix s = principal_sqrt(m);
    CHECK(rel(s - cm({{0, 0, 0}, {0, 2, 0}, {0, 0, 0}}), 1.0) < 1e-15);
    CHECK_THROWS_AS(principal_sqrt(cm({{0, 1}, {0, 0}})), Error);
  }

  TEST_CASE("spectrum is sorted and supports spectral mapping") {
    const Spectrum s = spectrum(cm({{1, 0, 0}, {0, 3, 0}, {0, 0, 0}}));
    REQUIRE(s.size() == 3);
    CHECK(std::abs(s.eigenvalues[0]) < 1e-15);
    CHECK(std::abs(s.eigenvalues[1] - 1.0) < 1e-15);
    CHECK(std::abs(s.eigenvalues[2] - 3.0) < 1e-15);

    Rng rng(37);
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix a = testsupport::random_matrix(rng, 4, 4);
      std::vector<Complex> squared;
      for (const Complex& e : spectrum(a).eigenvalues) squared.push_back(e * e);
      CHECK(multiset_distance(spectrum(a * a).eigenvalues, squared) < 1e-8);
      // p(x) = x^3 - 2x + 1
      std::vector<Complex> mapped;
      for (const Complex& e : spectrum(a).eigenvalues) mapped.push_back(e * e * e - 2.0 * e + 1.0);
      const ComplexMatrix pa = a * a * a - 2.0 * a + ComplexMatrix::Identity(4, 4);
      CHECK(multiset_distance(spectrum(pa).eigenvalues, mapped) < 1e-8 * (1.0 + pa.norm()));
    }
  }

  TEST_CASE("multiset distance") {
    CHECK(multiset_distance({1.0, 2.0}, {2.0, 1.0}) == 0.0);
    CHECK(std::isinf(multiset_distance({1.0}, {1.0, 2.0})));
  }

  TEST_CASE("core_nilpotent rejects non-square and non-finite input") {
    CHECK_THROWS_AS(core_nilpotent(ComplexMatrix::Zero(2, 3)), Error);
    ComplexMatrix a = ComplexMatrix::Identity(2, 2);
    a(0, 1) = NAN;
    CHECK_THROWS_AS(core_nilpotent(a), Error);
  }
}
