#include "phasespace/solutions.hpp"

#include <cmath>

#include "phasespace/error.hpp"
#include "phasespace/fft.hpp"
#include "phasespace/interp.hpp"
#include "row_transform.hpp"

namespace phasespace {

namespace {

void check_inputs(const PositionWavefunction& phi, const GFunction& g, const PhaseSpaceGrid& grid) {
  require(phi.grid.same_as(grid.q), "solve: phi must be sampled on the q grid");
  require(g.values.size() == g.grid.n, "solve: g sample count does not match its grid");
  require(g.grid.aligned_with(grid.ygrid()), "solve: g grid must have the q step and be aligned with the y grid");
  require(g.norm2() > 0.0, "solve: g is identically zero");
}

}  // namespace

PhaseSpaceWavefunction solve_general_g(const PositionWavefunction& phi, const GFunction& g,
                                      const PhaseSpaceGrid& grid, Exec exec) {
  check_inputs(phi, g, grid);
  guard(boundary_magnitude(phi.values) <= kPaddingTolerance,
        "solve_general_g: phi does not decay inside its grid; phi(q+y) would be truncated");
  const auto n = static_cast<long long>(grid.q.n);
  const auto m = g.grid.n;
  const auto off = std::llround(g.grid.min / grid.q.step);
  detail::RowTransform tr(grid);
  ComplexField2D out(grid, Domain::qp);
  RegionErrors errors;
#pragma omp parallel if (exec == Exec::parallel)
  {
    std::vector<cplx> samples(m);
#pragma omp for schedule(static)
    for (long long i = 0; i < n; ++i) {
      errors.run([&] {
        for (std::size_t k = 0; k < m; ++k) {
          const long long idx = i + static_cast<long long>(k) + off;
          samples[k] = (idx >= 0 && idx < n) ? g.values[k] * phi.values[static_cast<std::size_t>(idx)] : cplx{};
        }
        auto row = out.row(static_cast<std::size_t>(i));
        tr.forward(samples, g.grid, row);
        const double q = grid.q.at(static_cast<std::size_t>(i));
        for (std::size_t j = 0; j < grid.p.n; ++j) row[j] *= std::polar(1.0, -q * grid.p.at(j) / (2.0 * grid.hbar));
      });
    }
  }
  errors.rethrow();
  return {std::move(out), Convention::general_g};
}

PhaseSpaceWavefunction solve_s_family(const PositionWavefunction& phi, const GFunction& g, double s,
                                      const PhaseSpaceGrid& grid, Exec exec) {
  require(std::isfinite(s), "solve_s_family: s must be finite");
  require(std::abs(s + 1.0) > 1e-12,
          "solve_s_family: s = -1 is singular here; that endpoint needs the momentum-side construction");
  check_inputs(phi, g, grid);
  const auto n = grid.q.n;
  const double hbar = grid.hbar;
  detail::RowTransform tr(grid);
  ComplexField2D out(grid, Domain::qp);

  if (std::abs(s - 1.0) <= 1e-14) {
    std::vector<cplx> gt(n);
    tr.forward(g.values, g.grid, gt);
    for (std::size_t i = 0; i < n; ++i) {
      const double q = grid.q.at(i);
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) = std::polar(1.0, -grid.p.at(j) * q / hbar) * gt[j] * phi.values[i];
      }
    }
    return {std::move(out), Convention::s_family};
  }

  BandLimited bl(phi.grid, phi.values);
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = 2.0 * grid.q.at(i) / (s + 1.0);
  const auto xi = bl.affine(a, 0.5 * (1.0 - s), g.grid, exec);
  const auto m = g.grid.n;
  const auto rows = static_cast<long long>(n);
  RegionErrors errors;
#pragma omp parallel if (exec == Exec::parallel)
  {
    std::vector<cplx> samples(m);
#pragma omp for schedule(static)
    for (long long ii = 0; ii < rows; ++ii) {
      errors.run([&] {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t k = 0; k < m; ++k) samples[k] = g.values[k] * xi[i * m + k];
        auto row = out.row(i);
        tr.forward(samples, g.grid, row);
        const double q = grid.q.at(i);
        for (std::size_t j = 0; j < n; ++j) row[j] *= std::polar(1.0, -2.0 * grid.p.at(j) * q / (hbar * (s + 1.0)));
      });
    }
  }
  errors.rethrow();
  return {std::move(out), Convention::s_family};
}

GFunction wigner_conjugate_g(const PositionWavefunction& phi, double s, const PhaseSpaceGrid& grid) {
  require(std::isfinite(s) && std::abs(s + 1.0) > 1e-12, "wigner_conjugate_g: s = -1 has no conjugate choice");
  require(phi.grid.same_as(grid.q), "wigner_conjugate_g: phi must be sampled on the q grid");
  const auto n = grid.q.n;
  const auto want = static_cast<std::size_t>(std::ceil(2.0 * static_cast<double>(n) / std::abs(1.0 + s)));
  const auto y = extended_ygrid(grid, std::max<std::size_t>(8, fft::next_power_of_two(want)));
  BandLimited bl(phi.grid, phi.values);
  const std::vector<double> a{0.0};
  auto v = bl.affine(a, -0.5 * (s + 1.0), y, Exec::serial);
  for (auto& z : v) z = std::conj(z);
  return GFunction{y, std::move(v), s};
}

GFunction wigner_conjugate_g_general(const PositionWavefunction& phi, const PhaseSpaceGrid& grid) {
  require(phi.grid.same_as(grid.q), "wigner_conjugate_g_general: phi must be sampled on the q grid");
  require(std::abs(grid.q.min + 0.5 * static_cast<double>(grid.q.n) * grid.q.step) <= 1e-12 * grid.q.step * grid.q.n,
          "wigner_conjugate_g_general: the q grid must be symmetric about 0");
  const auto y = grid.ygrid();
  const auto n = y.n;
  // -y_k = q_{n-k} on a symmetric grid; k = 0 falls just outside.
  std::vector<cplx> v(n);
  for (std::size_t k = 1; k < n; ++k) v[k] = std::conj(phi.values[n - k]);
  return GFunction{y, std::move(v), std::nullopt};
}

}  // namespace phasespace
