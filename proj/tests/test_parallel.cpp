#include <doctest.h>

#include "phasespace/error.hpp"
#include "phasespace/kernels.hpp"
#include "phasespace/reference.hpp"
#include "phasespace/solutions.hpp"
#include "phasespace/star.hpp"
#include "support.hpp"

using namespace phasespace;
using namespace testing;

TEST_SUITE("parallel") {
  TEST_CASE("threaded and serial paths give identical numbers") {
    const auto g = make_phase_grid(128, 8.0, 1.0);
    const auto phi = hermite_eigenstate(2, kUnits, g.q);
    std::vector<MixtureComponent> mix{{0.4, hermite_eigenstate(0, kUnits, g.q)}, {0.6, phi}};
    const auto rho = density_from_mixture(mix);
    for (double s : {-0.5, 0.0, 0.5, 1.0}) {
      CHECK(max_abs_diff(psi_s_pure(phi, s, g, Exec::serial).field, psi_s_pure(phi, s, g, Exec::parallel).field) == 0.0);
      CHECK(max_abs_diff(wigner_s_from_density(rho, s, g, Exec::serial).field,
                         wigner_s_from_density(rho, s, g, Exec::parallel).field) == 0.0);
    }
    const auto gs = wigner_conjugate_g(phi, 0.5, g);
    CHECK(max_abs_diff(solve_s_family(phi, gs, 0.5, g, Exec::serial).field,
                       solve_s_family(phi, gs, 0.5, g, Exec::parallel).field) == 0.0);
    const auto g2 = wigner_conjugate_g_general(phi, g);
    CHECK(max_abs_diff(solve_general_g(phi, g2, g, Exec::serial).field, solve_general_g(phi, g2, g, Exec::parallel).field) ==
          0.0);

    const auto W = wigner_from_pure(phi, g);
    const auto H = HamiltonianSpec::harmonic(kUnits, g.q);
    CHECK(max_abs_diff(star_apply_left(H, W.field, 0.0, Exec::serial), star_apply_left(H, W.field, 0.0, Exec::parallel)) ==
          0.0);
    CHECK(max_abs_diff(star_apply_right(H, W.field, 0.3, Exec::serial),
                       star_apply_right(H, W.field, 0.3, Exec::parallel)) == 0.0);
    const auto R = density_operator(rho);
    CHECK(max_abs_diff(operator_to_symbol(R, 0.5, g, Exec::serial), operator_to_symbol(R, 0.5, g, Exec::parallel)) == 0.0);
    const auto cs = KernelSpec{CoherentStateKernel{kUnits}, {}, {}};
    CHECK(max_abs_diff(kernel_transform(cs, phi, g, Exec::serial).field, kernel_transform(cs, phi, g, Exec::parallel).field) ==
          0.0);
  }

  TEST_CASE("guards raised inside threaded loops reach the caller") {
    const auto g = make_phase_grid(64, 6.0, 1.0);
    const auto H = HamiltonianSpec::sampled(1.0, g.q, std::vector<double>(g.q.n, 0.0));
    const auto flat = sample(g, [](double, double p) { return cplx(std::exp(-p * p), 0.0); });
    CHECK_THROWS_AS(star_apply_left(H, flat, 0.0, Exec::parallel), NumericalGuard);
    CHECK_THROWS_AS(star_apply_left(H, flat, 0.0, Exec::serial), NumericalGuard);
  }

  TEST_CASE("fast paths against the direct sums") {
    const auto g = make_phase_grid(64, 8.0, 1.0);
    const auto phi = hermite_eigenstate(1, kUnits, g.q);
    const auto W = wigner_from_pure(phi, g);
    const auto chi = partial_fourier_p_to_y(W.field);
    CHECK(max_abs_diff(reference::partial_fourier_y_to_p(chi), partial_fourier_y_to_p(chi)) < 1e-12);

    for (double s : {-0.5, 0.25, 1.0}) {
      CHECK(max_abs_diff(reference::psi_s_pure(phi, s, g).field, psi_s_pure(phi, s, g).field) < 1e-8);
    }
    const std::vector<KernelSpec> specs{
        {CoherentStateKernel{kUnits}, {}, {}},
        {GeneralGKernel{random_mixture_g(3, g.ygrid(), Convention::general_g)}, {}, {}},
        gauged({CoherentStateKernel{kUnits}, {}, {}}, [](double q, double p) { return 0.3 * q * p; })};
    for (std::size_t t = 0; t < specs.size(); ++t) {
      const auto fast = kernel_transform(specs[t], phi, g);
      const auto slow = reference::kernel_transform(specs[t], phi, g);
      CHECK_MESSAGE(max_abs_diff(fast.field, slow.field) < 1e-8 * std::max(1.0, max_abs(slow.field)), "spec " << t);
    }

    // The s-family kernel oscillates in q' at 2p / (1-s) hbar, so the q' sum
    // only resolves it for |p| below (1-s)/2 of the band edge.
    const double s = -0.5;
    const KernelSpec sk{SFamilyKernel{random_mixture_g(5, extended_ygrid(g, 2 * g.q.n), Convention::s_family, s), s}, {}, {}};
    const auto fast = kernel_transform(sk, phi, g);
    const auto slow = reference::kernel_transform(sk, phi, g);
    const double pcut = 0.5 * (1.0 - s) * pi / (2.0 * g.q.step);
    double err = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < g.q.n; ++i) {
      for (std::size_t j = 0; j < g.p.n; ++j) {
        if (std::abs(g.p.at(j)) > pcut) continue;
        err = std::max(err, std::abs(fast.field(i, j) - slow.field(i, j)));
        scale = std::max(scale, std::abs(slow.field(i, j)));
      }
    }
    CHECK(err < 1e-8 * std::max(1.0, scale));
  }
}
