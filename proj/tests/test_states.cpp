#include <doctest.h>

#include "phasespace/error.hpp"
#include "support.hpp"

using namespace phasespace;
using namespace testing;

TEST_SUITE("states") {
  TEST_CASE("laguerre") {
    CHECK(laguerre(0, 7.3) == 1.0);
    CHECK(laguerre(1, 3.0) == doctest::Approx(-2.0));
    CHECK(laguerre(2, 2.0) == doctest::Approx(-1.0));
    // explicit sum L_n(x) = sum_k (-1)^k C(n,k) x^k / k!
    for (int n = 0; n <= 10; ++n) {
      for (double x : {0.0, 0.5, 3.0, 9.0}) {
        double ref = 0.0, c = 1.0;
        for (int k = 0; k <= n; ++k) {
          ref += ((k % 2) ? -1.0 : 1.0) * c * std::pow(x, k) / factorial(k);
          c = c * (n - k) / (k + 1);
        }
        CHECK(laguerre(n, x) == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
      }
    }
    CHECK_THROWS_AS(laguerre(-1, 0.0), InvalidArgument);
  }

  TEST_CASE("hermite eigenstates") {
    const Grid1D q = Grid1D::symmetric(256, 8.0);
    const auto phi0 = hermite_eigenstate(0, kUnits, q);
    CHECK(phi0.values[128].real() == doctest::Approx(0.751126).epsilon(1e-6));
    CHECK(phi0.values[128].real() == doctest::Approx(std::pow(pi, -0.25)).epsilon(1e-10));
    CHECK(std::abs(hermite_eigenstate(1, OscillatorUnits(2.0, 0.7, 1.3), q).values[128]) < 1e-15);
    REQUIRE(phi0.energy.has_value());
    CHECK(*phi0.energy == 0.5);

    const auto phi5 = hermite_eigenstate(5, kUnits, q);
    CHECK(std::abs(phi5.norm() - 1.0) < 1e-10);
    CHECK(*phi5.energy == 5.5);
    int changes = 0;
    double last = 0.0;
    for (const auto& v : phi5.values) {
      if (std::abs(v.real()) < 1e-10) continue;
      if (last != 0.0 && (v.real() > 0) != (last > 0)) ++changes;
      last = v.real();
    }
    CHECK(changes == 5);
  }

  TEST_CASE("hermite functions at lambda != 1 scale as lambda^{-1/2} psi(q/lambda)") {
    const Grid1D q = Grid1D::symmetric(256, 10.0);
    const OscillatorUnits u(2.0, 0.5, 1.5);  // lambda = sqrt(1.5)
    const auto phi = hermite_eigenstate(2, u, q);
    for (std::size_t k = 0; k < q.n; k += 17) {
      const double x = q.at(k) / u.lambda;
      const double ref = std::pow(pi, -0.25) / std::sqrt(8.0) * (4.0 * x * x - 2.0) * std::exp(-0.5 * x * x) /
                         std::sqrt(u.lambda);
      CHECK(phi.values[k].real() == doctest::Approx(ref).epsilon(1e-9).scale(1.0));
    }
  }

  TEST_CASE("narrow grids trip the support guard") {
    CHECK_THROWS_AS(hermite_eigenstate(20, kUnits, Grid1D::symmetric(256, 8.0)), NumericalGuard);
    CHECK_NOTHROW(hermite_eigenstate(20, kUnits, Grid1D::symmetric(256, 14.0)));
  }

  TEST_CASE("orthonormality and Schrodinger residual") {
    const Grid1D q = Grid1D::symmetric(256, 10.0);
    std::vector<PositionWavefunction> phi;
    for (int n = 0; n <= 10; ++n) phi.push_back(hermite_eigenstate(n, kUnits, q));
    double worst = 0.0;
    for (int m = 0; m <= 10; ++m) {
      for (int n = 0; n <= 10; ++n) worst = std::max(worst, std::abs(inner_product(phi[m], phi[n]) - (m == n ? 1.0 : 0.0)));
    }
    CHECK(worst < 1e-8);
    std::vector<double> V(q.n);
    for (std::size_t k = 0; k < q.n; ++k) V[k] = 0.5 * q.at(k) * q.at(k);
    for (int n = 0; n <= 10; ++n) CHECK(schrodinger_residual(phi[n], 1.0, V, *phi[n].energy, 1.0) < 1e-6);
  }

  TEST_CASE("coherent states") {
    const Grid1D q = Grid1D::symmetric(512, 16.0);
    const auto vac = coherent_wavefunction(0.0, kUnits, q);
    const auto phi0 = hermite_eigenstate(0, kUnits, q);
    double err = 0.0;
    for (std::size_t k = 0; k < q.n; ++k) err = std::max(err, std::abs(vac.values[k] - phi0.values[k]));
    CHECK(err < 1e-12);

    const auto c1 = coherent_wavefunction(gamma_of(1.0, 0.0, kUnits), kUnits, q);
    CHECK(std::abs(c1.norm() - 1.0) < 1e-10);
    std::size_t peak = 0;
    for (std::size_t k = 0; k < q.n; ++k) {
      if (std::abs(c1.values[k]) > std::abs(c1.values[peak])) peak = k;
    }
    CHECK(q.at(peak) == doctest::Approx(1.0));

    const auto c2 = coherent_wavefunction(gamma_of(2.0, 0.0, kUnits), kUnits, q);
    CHECK(std::abs(inner_product(vac, c2)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
    const cplx gm(0.7, -0.4);
    const auto c3 = coherent_wavefunction(gm, kUnits, q);
    CHECK(std::abs(inner_product(vac, c3)) == doctest::Approx(std::exp(-0.5 * std::norm(gm))).epsilon(1e-10));

    const auto [q0, p0] = qp_of(gamma_of(0.3, -1.2, kUnits), kUnits);
    CHECK(q0 == doctest::Approx(0.3));
    CHECK(p0 == doctest::Approx(-1.2));
    CHECK_THROWS_AS(coherent_wavefunction(gamma_of(15.9, 0.0, kUnits), kUnits, q), NumericalGuard);
  }

  TEST_CASE("density matrices") {
    const Grid1D q = Grid1D::symmetric(128, 8.0);
    const auto phi0 = hermite_eigenstate(0, kUnits, q);
    const auto phi1 = hermite_eigenstate(1, kUnits, q);
    const auto rho = pure(phi0);
    CHECK(std::abs(rho.purity() - 1.0) < 1e-8);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.rho * q.step);
    CHECK(es.eigenvalues()(q.n - 2) < 1e-12);  // rank one

    std::vector<MixtureComponent> mix{{0.5, phi0}, {0.5, phi1}};
    const auto rm = density_from_mixture(mix);
    CHECK(std::abs(rm.purity() - 0.5) < 1e-8);
    CHECK(rm.hermiticity_error() <= 1e-12);
    CHECK(rm.min_eigenvalue() >= -1e-8);

    std::vector<MixtureComponent> bad{{0.6, phi0}, {0.6, phi1}};
    CHECK_THROWS_AS(density_from_mixture(bad), InvalidArgument);
    std::vector<MixtureComponent> neg{{1.5, phi0}, {-0.5, phi1}};
    CHECK_THROWS_AS(density_from_mixture(neg), InvalidArgument);
  }

  TEST_CASE("momentum representation") {
    const Grid1D q = Grid1D::symmetric(256, 8.0);
    const auto g = make_phase_grid(256, 8.0, 1.0);
    const auto t0 = momentum_representation(hermite_eigenstate(0, kUnits, q), 1.0);
    double err = 0.0;
    for (std::size_t j = 0; j < q.n; ++j) {
      const double p = t0.grid.at(j);
      err = std::max(err, std::abs(t0.values[j] - std::pow(pi, -0.25) * std::exp(-0.5 * p * p)));
    }
    CHECK(err < 1e-10);
    CHECK(t0.grid.same_as(g.p));
    CHECK(std::abs(momentum_representation(hermite_eigenstate(3, kUnits, q), 1.0).norm() - 1.0) < 1e-10);

    const auto t1 = momentum_representation(hermite_eigenstate(1, kUnits, q), 1.0);
    double re = 0.0, odd = 0.0;
    for (std::size_t j = 1; j < q.n; ++j) {
      re = std::max(re, std::abs(t1.values[j].real()));
      odd = std::max(odd, std::abs(t1.values[j] + t1.values[q.n - j]));
    }
    CHECK(re < 1e-10);
    CHECK(odd < 1e-10);
  }

  TEST_CASE("normalization rejects zero and non-finite samples") {
    const Grid1D q = Grid1D::symmetric(16, 2.0);
    CHECK_THROWS_AS(PositionWavefunction::normalized(q, std::vector<cplx>(16, 0.0)), InvalidArgument);
    std::vector<cplx> v(16, 1.0);
    v[3] = std::nan("");
    CHECK_THROWS_AS(PositionWavefunction::normalized(q, v), InvalidArgument);
    CHECK_THROWS_AS(OscillatorUnits(0.0, 1.0, 1.0), InvalidArgument);
  }
}
