#include "doctest.h"

#include <cmath>

#include "descwave/error.hpp"
#include "descwave/hypotheses.hpp"
#include "descwave/solver.hpp"
#include "support.hpp"

using namespace descwave;
using namespace descwave::solver;
using testsupport::Rng;

namespace {

MixedProblem paper() { return testsupport::example("paper-4-2").problem; }

ComplexVector vec(std::initializer_list<Complex> xs) {
  ComplexVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Complex x : xs) v(i++) = x;
  return v;
}

double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("discretize samples at x = i / N") {
    const VectorGrid g = discretize([](double x) { return vec({x, 0.0, 0.0}); }, 4, 3);
    REQUIRE(g.size() == 5);
    for (int i = 0; i <= 4; ++i) {
      CHECK(g[static_cast<std::size_t>(i)](0) == Complex(i / 4.0));
      CHECK(g[static_cast<std::size_t>(i)](1) == Complex(0.0));
    }
    CHECK_THROWS_AS(discretize([](double) { return vec({1.0, 2.0}); }, 4, 3), Error);
    CHECK_THROWS_AS(discretize(VectorGrid(3, vec({1.0})), 4, 1), Error);
    VectorGrid bad(5, vec({1.0}));
    bad[2](0) = NAN;
    CHECK_THROWS_AS(discretize(bad, 4, 1), Error);
  }

  TEST_CASE("scalar coefficients match a direct two-level solve") {
    const ComplexMatrix one = ComplexMatrix::Identity(1, 1);
    const pencil::RegularizedPencil rp = pencil::regularize(one, one, 1.0);
    const double k = 0.1;
    for (double rho : {-0.4, -1.7, -3.2}) {
      const pencil::ModePropagators mp = pencil::make_propagators(rp, rho);
      const ComplexVector F = vec({Complex(0.8, -0.1)});
      const ComplexVector G = vec({Complex(-0.3, 0.4)});
      const ModeCoefficients mc = mode_coefficients(F, G, rp, mp, k, 1e-8, 1.0);
      CHECK(mc.consistent);
      CHECK(mc.group_inverse);
      const Complex p = mp.Z0(0, 0);
      const Complex q = mp.Z1(0, 0);
      // P + Q = F, p P + q Q = F + k G
      const Complex Pl = (F(0) + k * G(0) - q * F(0)) / (p - q);
      const Complex Ql = F(0) - Pl;
      CHECK(std::abs(mc.P(0) - Pl) < 1e-12);
      CHECK(std::abs(mc.Q(0) - Ql) < 1e-12);
    }
  }

  TEST_CASE("mode coefficients on the example") {
    const MixedProblem p = paper();
    const Prepared prep = prepare(p);
    const std::vector<Mode> modes = compute_modes(p, prep);
    REQUIRE(static_cast<int>(modes.size()) == p.N - 1);
    const hypotheses::CouplingMatrix g = hypotheses::build_G(p.alpha, p.beta, p.bc);
    const ComplexMatrix& P = prep.rp.P;
    for (const Mode& mode : modes) {
      const ModeCoefficients& c = mode.coefficients;
      CHECK(c.consistent);
      // sum identity
      CHECK((P * (c.P + c.Q) - c.F_l).norm() < 1e-10 * (1.0 + c.F_l.norm()));
      // second level
      const ComplexVector g1 = mode.propagators.Z0 * P * c.P + mode.propagators.Z1 * P * c.Q;
      CHECK((g1 - c.F_l - p.k * c.G_l).norm() < 1e-10 * (1.0 + c.F_l.norm()));
      // in the kernel of G and the core
      CHECK((g.G * c.P).norm() < 1e-10);
      CHECK((g.G * c.Q).norm() < 1e-10);
      CHECK((P * c.P - c.P).norm() < 1e-10);
      CHECK((P * c.Q - c.Q).norm() < 1e-10);
    }
  }

  TEST_CASE("data outside the separable set is rejected per mode") {
    MixedProblem p = paper();
    for (std::size_t i = 0; i < p.G.size(); ++i) p.G[i](0) = std::sin(M_PI * static_cast<double>(i) / p.N);
    const Prepared prep = prepare(p);
    const pencil::ModePropagators mp = pencil::build_propagators(prep.rp, prep.es.eigenvalues(0), p.r());
    try {
      mode_coefficients(0, prep.es, prep.rp, mp, p.F, p.G, p.k);
      FAIL("expected hypothesis_violation");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::hypothesis_violation);
    }
    CHECK_THROWS_AS(solve(p), Error);
  }

  TEST_CASE("example solution satisfies the scheme") {
    const MixedProblem p = paper();
    const DiscreteSolution sol = solve(p);
    CHECK_FALSE(sol.trivial);
    CHECK(sol.M == p.steps());
    CHECK(sol.U.cols() == (p.N + 1) * (sol.M + 1));
    const SchemeResidual res = scheme_residual(sol, p);
    const double thr = residual_threshold(p);
    CHECK(res.interior <= thr);
    CHECK(res.boundary0 <= thr);
    CHECK(res.boundaryN <= thr);
    CHECK(res.init0 <= thr);
    CHECK(res.init1 <= thr);
    CHECK(sol.max_norm() > 0.1);

    // confinement to the core
    CHECK(max_diff(prepare(p).rp.P * sol.U, sol.U) < 1e-10);

    // perturbing the grid shows up in the residual
    Rng rng(1);
    ComplexMatrix noisy = sol.U;
    for (Eigen::Index c = 2 * (p.N + 1); c < noisy.cols(); ++c) noisy.col(c) += 1e-3 * testsupport::random_vector(rng, 3);
    CHECK(scheme_residual(noisy, sol.M, p).interior > 100.0 * thr);
  }

  TEST_CASE("solutions are linear in the data") {
    MixedProblem a = paper();
    MixedProblem b = paper();
    Rng rng(12);
    for (std::size_t i = 0; i < b.F.size(); ++i) {
      b.F[i] = vec({std::cos(2.0 * i), 0.3 * std::sin(3.0 * i), 0.0});
      b.G[i] = vec({0.0, 0.1 * std::cos(1.0 * i), 0.0});
    }
    b.F = testsupport::completed_grid(b.F, b.N, b.alpha, b.beta);
    b.G = testsupport::completed_grid(b.G, b.N, b.alpha, b.beta);
    const Complex ca(0.7, -0.2), cb(-1.3, 0.5);
    MixedProblem c = paper();
    for (std::size_t i = 0; i < c.F.size(); ++i) {
      c.F[i] = ca * a.F[i] + cb * b.F[i];
      c.G[i] = ca * a.G[i] + cb * b.G[i];
    }
    const DiscreteSolution sa = solve(a), sb = solve(b), sc = solve(c);
    CHECK(max_diff(sc.U, ca * sa.U + cb * sb.U) < 1e-10);
  }

  TEST_CASE("zero data gives the zero solution") {
    MixedProblem p = paper();
    for (auto& v : p.F) v.setZero();
    for (auto& v : p.G) v.setZero();
    CHECK(solve(p).max_norm() == 0.0);
  }

  TEST_CASE("nilpotent D yields the trivial solution") {
    MixedProblem p = paper();
    p.E = ComplexMatrix::Zero(3, 3);
    p.A = ComplexMatrix::Identity(3, 3);
    const DiscreteSolution sol = solve(p);
    CHECK(sol.trivial);
    CHECK(sol.U.cols() == (p.N + 1) * (p.steps() + 1));
    CHECK(sol.max_norm() == 0.0);
  }

  TEST_CASE("scalar wave equation converges to the sine standing wave") {
    MixedProblem p = testsupport::example("scalar-wave").problem;
    const DiscreteSolution sol = solve(p);
    CHECK(scheme_residual(sol, p).max() <= residual_threshold(p));
    // single mode: U(i, j) = cos(j theta) sin(pi x_i) with cos(theta) = 1 - r^2 lambda / 2
    const double lambda = 4.0 * std::pow(std::sin(M_PI / (2.0 * p.N)), 2);
    const double theta = std::acos(1.0 - 0.5 * p.r() * p.r() * lambda);
    double worst = 0.0;
    for (int j = 0; j <= sol.M; ++j) {
      for (int i = 0; i <= p.N; ++i) {
        const Complex expect = std::cos(j * theta) * std::sin(M_PI * i / p.N) +
                               std::sin(j * theta) / std::sin(theta) * (1.0 - std::cos(theta)) * std::sin(M_PI * i / p.N);
        worst = std::max(worst, std::abs(sol.at(i, j)(0) - expect));
      }
    }
    CHECK(worst < 1e-10);
  }

  TEST_CASE("stability sweep") {
    const MixedProblem p = paper();
    const SweepResult one = stability_sweep(p, 0);
    CHECK(one.rows.size() == 1);
    CHECK(one.ratios.empty());
    CHECK(one.bounded);

    const SweepResult s = stability_sweep(p, 3);
    REQUIRE(s.rows.size() == 4);
    REQUIRE(s.ratios.size() == 3);
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
      CHECK_FALSE(s.rows[i].error.has_value());
      CHECK(s.rows[i].k == doctest::Approx(p.k / std::pow(2.0, static_cast<double>(i))));
      CHECK(s.rows[i].M == p.steps() << i);
    }
    CHECK(s.bounded);
  }

  TEST_CASE("power envelope") {
    const PowerEnvelope id = power_envelope(ComplexMatrix::Identity(2, 2), 10, 0.1);
    CHECK(id.peak == doctest::Approx(1.0));
    CHECK(std::abs(id.S) < 1e-14);
    ComplexMatrix z = ComplexMatrix::Zero(1, 1);
    z(0, 0) = 2.0;
    const PowerEnvelope g = power_envelope(z, 4, 0.5);
    CHECK(g.peak == doctest::Approx(16.0));
    CHECK(g.S == doctest::Approx(std::log(16.0) / 2.0));
  }

  TEST_CASE("problem validation") {
    MixedProblem p = paper();
    p.N = 2;
    CHECK_THROWS_AS(p.validate(), Error);
    p = paper();
    p.k = -1.0;
    CHECK_THROWS_AS(p.validate(), Error);
    p = paper();
    p.E = ComplexMatrix::Zero(2, 2);
    CHECK_THROWS_AS(p.validate(), Error);
  }
}
