#include <doctest.h>

#include "phasespace/error.hpp"
#include "phasespace/reference.hpp"
#include "phasespace/star.hpp"
#include "support.hpp"

using namespace phasespace;
using namespace testing;

namespace {

const PhaseSpaceGrid& desk() {
  static const auto g = make_phase_grid(256, 8.0, 1.0);
  return g;
}

}  // namespace

TEST_SUITE("quasidist") {
  TEST_CASE("Wigner functions of oscillator eigenstates") {
    const auto& g = desk();
    const auto W0 = wigner_from_pure(hermite_eigenstate(0, kUnits, g.q), g);
    const auto ref0 = sample(g, [](double q, double p) { return cplx(std::exp(-(q * q + p * p)) / pi); });
    CHECK(max_abs_diff(W0.field, ref0) < 1e-8);
    CHECK(W0.imag_max() == 0.0);

    const auto W1 = wigner_from_pure(hermite_eigenstate(1, kUnits, g.q), g);
    CHECK(W1.field(g.q.n / 2, g.p.n / 2).real() == doctest::Approx(-1.0 / pi).epsilon(1e-10));
    for (int n = 0; n <= 5; ++n) {
      CHECK(max_abs_diff(wigner_from_pure(hermite_eigenstate(n, kUnits, g.q), g).field, analytic_wigner(n, g)) < 1e-6);
    }
  }

  TEST_CASE("W_s from the density matrix") {
    const auto& g = desk();
    const auto phi0 = hermite_eigenstate(0, kUnits, g.q);
    CHECK(max_abs_diff(wigner_s_from_density(pure(phi0), 0.0, g).field, wigner_from_pure(phi0, g).field) < 1e-8);
    for (int n = 0; n <= 3; ++n) {
      const auto phi = hermite_eigenstate(n, kUnits, g.q);
      CHECK(max_abs_diff(wigner_s_from_density(pure(phi), 1.0, g).field, kirkwood_rihaczek(phi, g).field) < 1e-6);
    }
    std::vector<MixtureComponent> mix{{0.5, phi0}, {0.5, hermite_eigenstate(1, kUnits, g.q)}};
    const auto rho = density_from_mixture(mix);
    for (double s : {-0.5, 0.0, 0.5, 1.0}) {
      const auto W = wigner_s_from_density(rho, s, g);
      CHECK(W.source == Source::mixed);
      CHECK(std::abs(W.normalization() - 1.0) < 1e-6);
    }
  }

  TEST_CASE("Kirkwood-Rihaczek closed form") {
    const auto& g = desk();
    const auto phi = hermite_eigenstate(2, kUnits, g.q);
    const auto pt = momentum_representation(phi, 1.0);
    const auto kr = kirkwood_rihaczek(phi, g);
    double err = 0.0;
    for (std::size_t i = 0; i < g.q.n; ++i) {
      for (std::size_t j = 0; j < g.p.n; ++j) {
        const cplx ref = std::polar(1.0, -g.p.at(j) * g.q.at(i)) * std::conj(pt.values[j]) * phi.values[i] /
                         std::sqrt(2.0 * pi);
        err = std::max(err, std::abs(kr.field(i, j) - ref));
      }
    }
    CHECK(err < 1e-14);
    CHECK(kr.s == 1.0);
  }

  TEST_CASE("psi_s for pure states") {
    const auto& g = desk();
    const auto phi0 = hermite_eigenstate(0, kUnits, g.q);
    const auto ref = sample(g, [](double q, double p) { return cplx(2.0 * std::exp(-(q * q + p * p))); });
    CHECK(max_abs_diff(psi_s_pure(phi0, 0.0, g).field, ref) < 1e-8);
    CHECK(max_abs_diff(psi_s_pure(phi0, 1.0, g).field, kirkwood_rihaczek(phi0, g).field, 2.0 * pi) < 1e-8);
    const auto phi3 = hermite_eigenstate(3, kUnits, g.q);
    for (double s : {-0.5, 0.0, 0.5, 1.0}) {
      const auto W = wigner_s_from_density(pure(phi3), s, g);
      CHECK(max_abs_diff(psi_s_pure(phi3, s, g).field, W.field, 2.0 * pi) < 1e-8);
    }
  }

  TEST_CASE("W_s at s != 0 is complex, marginals stay real") {
    const auto& g = desk();
    const auto W = wigner_s_from_density(pure(hermite_eigenstate(1, kUnits, g.q)), 0.5, g);
    CHECK(W.imag_max() > 1e-2);
    const auto m = marginals(W);
    CHECK(m.imag_q < 1e-12);
    CHECK(m.imag_p < 1e-12);
  }

  TEST_CASE("Husimi function") {
    const auto& g = desk();
    for (int n = 0; n <= 4; ++n) {
      const auto Q = husimi(hermite_eigenstate(n, kUnits, g.q), kUnits, g);
      const auto ref = sample(g, [n](double q, double p) {
        const double x = 0.5 * (q * q + p * p);
        return cplx(std::pow(x, n) * std::exp(-x) / factorial(n));
      });
      CHECK(max_abs_diff(Q.field, ref) < 1e-6);
      CHECK(std::abs(Q.normalization() - 1.0) < 1e-6);
      CHECK(Q.kind == DistributionKind::husimi);
    }
    const double q0 = g.q.at(144), p0 = g.p.at(130);
    const auto coh = coherent_wavefunction(gamma_of(q0, p0, kUnits), kUnits, g.q);
    const auto Q = husimi(coh, kUnits, g);
    CHECK(Q.field(144, 130).real() == doctest::Approx(1.0).epsilon(1e-10));
    double mx = 0.0;
    for (const auto& v : Q.field.values) mx = std::max(mx, v.real());
    CHECK(mx == Q.field(144, 130).real());
  }

  TEST_CASE("marginals") {
    const auto& g = desk();
    for (int n = 0; n <= 4; ++n) {
      const auto phi = hermite_eigenstate(n, kUnits, g.q);
      const auto m = marginals(wigner_from_pure(phi, g));
      double e = 0.0;
      for (std::size_t i = 0; i < g.q.n; ++i) e = std::max(e, std::abs(m.q[i] - std::norm(phi.values[i])));
      CHECK(e < 1e-8);
      CHECK(m.guaranteed);
    }
    const auto phi2 = hermite_eigenstate(2, kUnits, g.q);
    const auto pt = momentum_representation(phi2, 1.0);
    const auto mk = marginals(kirkwood_rihaczek(phi2, g));
    double e = 0.0;
    for (std::size_t j = 0; j < g.p.n; ++j) e = std::max(e, std::abs(mk.p[j] - std::norm(pt.values[j])));
    CHECK(e < 1e-8);

    // Husimi marginals are the coherent-envelope convolution, not |phi|^2.
    const auto phi0 = hermite_eigenstate(0, kUnits, g.q);
    const auto mh = marginals(husimi(phi0, kUnits, g));
    CHECK_FALSE(mh.guaranteed);
    double diff = 0.0, conv = 0.0;
    for (std::size_t i = 0; i < g.q.n; ++i) {
      const double q = g.q.at(i);
      diff = std::max(diff, std::abs(mh.q[i] - std::norm(phi0.values[i])));
      conv = std::max(conv, std::abs(mh.q[i] - std::exp(-0.5 * q * q) / std::sqrt(2.0 * pi)));
    }
    CHECK(diff > 0.01);
    CHECK(conv < 1e-8);
  }

  TEST_CASE("purity") {
    const auto& g = desk();
    const auto W3 = wigner_from_pure(hermite_eigenstate(3, kUnits, g.q), g);
    CHECK(std::abs(purity_integral(W3) - 1.0) < 1e-6);
    std::vector<MixtureComponent> mix{{0.5, hermite_eigenstate(0, kUnits, g.q)}, {0.5, hermite_eigenstate(1, kUnits, g.q)}};
    const auto Wm = wigner_s_from_density(density_from_mixture(mix), 0.0, g);
    CHECK(std::abs(purity_integral(Wm) - 0.5) < 1e-6);
    std::vector<MixtureComponent> mix3{{0.2, hermite_eigenstate(0, kUnits, g.q)},
                                       {0.3, hermite_eigenstate(2, kUnits, g.q)},
                                       {0.5, hermite_eigenstate(3, kUnits, g.q)}};
    CHECK(std::abs(purity_integral(wigner_s_from_density(density_from_mixture(mix3), 0.0, g)) - 0.38) < 1e-6);

    auto doubled = W3;
    for (auto& v : doubled.field.values) v *= 2.0;
    CHECK(purity_integral(doubled) == doctest::Approx(4.0 * purity_integral(W3)).epsilon(1e-12));
    CHECK(doubled.normalization() == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_THROWS_AS(purity_integral(wigner_s_from_density(pure(hermite_eigenstate(0, kUnits, g.q)), 0.5, g)),
                    InvalidArgument);
  }

  TEST_CASE("expectation values") {
    const auto& g = desk();
    const auto I = identity_operator(g.q);
    const auto H = harmonic_hamiltonian_operator(kUnits, g.q);
    for (int n = 0; n <= 3; ++n) {
      const auto rho = pure(hermite_eigenstate(n, kUnits, g.q));
      for (double s : {-0.5, 0.0, 0.5, 1.0}) {
        CHECK(std::abs(expectation(wigner_s_from_density(rho, s, g), I) - 1.0) < 1e-8);
      }
      for (double s : {0.0, 0.5}) {
        const cplx e = expectation(wigner_s_from_density(rho, s, g), H);
        CHECK(std::abs(e - kUnits.energy(n)) / kUnits.energy(n) < 1e-6);
      }
    }
    const auto coh = coherent_wavefunction(gamma_of(1.25, -0.5, kUnits), kUnits, g.q);
    double mean = 0.0;
    for (std::size_t k = 0; k < g.q.n; ++k) mean += g.q.at(k) * std::norm(coh.values[k]) * g.q.step;
    const cplx eq = expectation(wigner_from_pure(coh, g), position_operator(g.q));
    CHECK(std::abs(eq - mean) < 1e-8);
    CHECK(mean == doctest::Approx(1.25).epsilon(1e-10));
  }

  TEST_CASE("operator symbols") {
    const auto& g = desk();
    const auto one = operator_to_symbol(identity_operator(g.q), 0.3, g);
    double e1 = 0.0;
    for (const auto& v : one.values) e1 = std::max(e1, std::abs(v - 1.0));
    CHECK(e1 < 1e-12);

    // an n x n operator holds separations |y| < halfwidth only, so the
    // comparison with W (built on an extended y grid) uses a wide grid
    const auto wide = make_phase_grid(256, 12.0, 1.0);
    const auto phi0 = hermite_eigenstate(0, kUnits, wide.q);
    const auto W0 = wigner_from_pure(phi0, wide);
    const auto rho = density_operator(pure(phi0));
    CHECK(max_abs_diff(operator_to_symbol(rho, 0.0, wide), W0.field) < 1e-10);
    OperatorMatrix as_observable = rho;
    as_observable.kind = OperatorKind::observable;
    CHECK(max_abs_diff(operator_to_symbol(as_observable, 0.0, wide), W0.field, 2.0 * pi) < 1e-10);

    const auto qs = operator_to_symbol(position_operator(g.q), 0.7, g);
    double eq = 0.0;
    for (std::size_t i = 0; i < g.q.n; ++i) {
      for (std::size_t j = 0; j < g.p.n; ++j) eq = std::max(eq, std::abs(qs(i, j) - g.q.at(i)));
    }
    CHECK(eq < 1e-10);

    ComplexField2D f1(g);
    for (auto& v : f1.values) v = 1.0;
    const auto Iop = symbol_to_operator(f1, -0.5);
    CHECK((Iop.m - identity_operator(g.q).m).cwiseAbs().maxCoeff() * g.q.step < 1e-12);
  }

  TEST_CASE("quantized oscillator spectrum and roundtrips") {
    const auto& g = desk();
    const auto spec = operator_spectrum(symbol_to_operator(HamiltonianSpec::harmonic(kUnits, g.q).symbol(g), 0.0));
    for (int n = 0; n <= 5; ++n) CHECK(std::abs(spec[n] - kUnits.energy(n)) < 1e-4);

    const auto W0 = wigner_from_pure(hermite_eigenstate(0, kUnits, g.q), g);
    for (double s : {-0.5, 0.0, 1.0}) {
      CHECK(max_abs_diff(operator_to_symbol(symbol_to_operator(W0.field, s), s, g), W0.field) < 1e-8);
    }
    const auto wide = make_phase_grid(256, 12.0, 1.0);
    std::vector<MixtureComponent> mix{{0.25, hermite_eigenstate(1, kUnits, wide.q)},
                                      {0.75, hermite_eigenstate(3, kUnits, wide.q)}};
    const auto R = density_operator(density_from_mixture(mix));
    for (double s : {-0.5, 0.5}) {
      const auto back = symbol_to_operator(operator_to_symbol(R, s, wide), s, OperatorKind::density);
      CHECK((back.m - R.m).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  TEST_CASE("aliased symbols trip the Nyquist guard") {
    const auto g = make_phase_grid(64, 4.0, 1.0);
    ComplexField2D f(g);
    for (std::size_t i = 0; i < g.q.n; ++i) {
      for (std::size_t j = 0; j < g.p.n; ++j) f(i, j) = (j % 2) ? -1.0 : 1.0;
    }
    CHECK(nyquist_fraction(f) > 0.5);
    CHECK_THROWS_AS(symbol_to_operator(f, 0.0), NumericalGuard);
  }

  TEST_CASE("double-Fourier quantization agrees at small n") {
    const auto g = make_phase_grid(64, 8.0, 1.0);
    const auto W1 = wigner_from_pure(hermite_eigenstate(1, kUnits, g.q), g);
    for (double s : {-0.5, 0.0, 0.5, 1.0}) {
      const auto fast = symbol_to_operator(W1.field, s, OperatorKind::density);
      const auto slow = reference::symbol_to_operator_double_fourier(W1.field, s, OperatorKind::density);
      CHECK_MESSAGE((fast.m - slow.m).cwiseAbs().maxCoeff() < 1e-8, "s=" << s);
    }
  }

  TEST_CASE("the 1/pi hbar, e^{2ipy} form of W agrees") {
    const auto g = make_phase_grid(64, 8.0, 1.0);
    const auto phi = hermite_eigenstate(1, kUnits, g.q);
    const auto W = wigner_from_pure(phi, g);
    const long n = static_cast<long>(g.q.n);
    double err = 0.0;
    for (long i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < g.p.n; ++j) {
        // the sampled e^{2ipy} has period pi/dq in p
        if (std::abs(g.p.at(j)) >= pi / (2.0 * g.q.step)) continue;
        cplx sum{};
        for (long k = -n; k <= n; ++k) {
          if (i - k < 0 || i - k >= n || i + k < 0 || i + k >= n) continue;
          const double y = k * g.q.step;
          sum += std::conj(phi.values[i - k]) * phi.values[i + k] * std::polar(1.0, -2.0 * g.p.at(j) * y);
        }
        err = std::max(err, std::abs(sum * g.q.step / pi - W.field(i, j)));
      }
    }
    CHECK(err < 1e-8);
  }
}
