#include "phasespace/reference.hpp"

#include <cmath>

#include "phasespace/error.hpp"
#include "phasespace/fft.hpp"
#include "phasespace/interp.hpp"

namespace phasespace::reference {

ComplexField2D partial_fourier_y_to_p(const ComplexField2D& chi) {
  require(chi.domain == Domain::qy, "reference::partial_fourier_y_to_p: input must be over (q,y)");
  const auto& g = chi.grid;
  const auto y = g.ygrid();
  ComplexField2D out(g, Domain::qp);
  for (std::size_t i = 0; i < g.q.n; ++i) {
    for (std::size_t j = 0; j < g.p.n; ++j) {
      cplx sum{};
      for (std::size_t k = 0; k < y.n; ++k) sum += chi(i, k) * std::polar(1.0, -g.p.at(j) * y.at(k) / g.hbar);
      out(i, j) = sum * y.step;
    }
  }
  return out;
}

PhaseSpaceWavefunction psi_s_pure(const PositionWavefunction& phi, double s, const PhaseSpaceGrid& grid) {
  require(phi.grid.same_as(grid.q), "reference::psi_s_pure: phi must be sampled on the q grid");
  const auto n = grid.q.n;
  const auto y = extended_ygrid(grid, 2 * n);
  BandLimited bl(phi.grid, phi.values);
  ComplexField2D out(grid, Domain::qp);
  std::vector<cplx> chi(y.n);
  for (std::size_t i = 0; i < n; ++i) {
    const double q = grid.q.at(i);
    for (std::size_t k = 0; k < y.n; ++k) {
      const double yk = y.at(k);
      chi[k] = std::conj(bl(q - 0.5 * (s + 1.0) * yk)) * bl(q + 0.5 * (1.0 - s) * yk);
    }
    for (std::size_t j = 0; j < n; ++j) {
      cplx sum{};
      for (std::size_t k = 0; k < y.n; ++k) sum += chi[k] * std::polar(1.0, -grid.p.at(j) * y.at(k) / grid.hbar);
      out(i, j) = sum * y.step;
    }
  }
  return {std::move(out), Convention::s_family};
}

PhaseSpaceWavefunction kernel_transform(const KernelSpec& spec, const PositionWavefunction& phi,
                                        const PhaseSpaceGrid& grid) {
  require(phi.grid.same_as(grid.q), "reference::kernel_transform: phi must be sampled on the q grid");
  const bool barg = std::holds_alternative<BargmannKernel>(spec.base);
  guard(!barg, "reference::kernel_transform: the Bargmann kernel is evaluated pointwise already");
  ComplexField2D out(grid, Domain::qp);
  for (std::size_t k = 0; k < grid.q.n; ++k) {
    const auto col = kernel_column(spec, grid, grid.q.at(k));
    const cplx w = phi.values[k] * grid.q.step;
    for (std::size_t t = 0; t < out.values.size(); ++t) out.values[t] += col.values[t] * w;
  }
  return {std::move(out), spec.convention()};
}

OperatorMatrix symbol_to_operator_double_fourier(const ComplexField2D& f, double s, OperatorKind kind) {
  const auto& g = f.grid;
  const auto n = g.q.n;
  guard(n <= 64, "reference::symbol_to_operator_double_fourier: n^4 cost, limited to n <= 64");
  // Column-wise Fourier coefficients in q: f(q, p_j) = sum_m c_j[m] e^{i kappa_m (q - q_min)}.
  std::vector<std::vector<cplx>> coef(n, std::vector<cplx>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) coef[j][i] = f(i, j);
    fft::forward(coef[j]);
    for (auto& c : coef[j]) c /= static_cast<double>(n);
  }
  auto eval = [&](std::size_t j, double q) {
    cplx sum{};
    const double u = q - g.q.min;
    for (std::size_t m = 0; m < n; ++m) {
      const double kap = fft::wavenumber(m, n, g.q.step);
      sum += (m == n / 2) ? coef[j][m] * std::cos(kap * u) : coef[j][m] * std::polar(1.0, kap * u);
    }
    return sum;
  };
  const double scale = (kind == OperatorKind::density ? 2.0 * pi * g.hbar : 1.0) / (2.0 * pi * g.hbar);
  const auto nn = static_cast<Eigen::Index>(n);
  OperatorMatrix out{g.q, Eigen::MatrixXcd::Zero(nn, nn), kind};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      // separation taken as the minimal image on the periodic q grid
      auto d = static_cast<long long>(b) - static_cast<long long>(a);
      const auto ln = static_cast<long long>(n);
      d = ((d + ln / 2) % ln + ln) % ln - ln / 2;
      const double y = static_cast<double>(d) * g.q.step;
      const double q = g.q.at(a) + 0.5 * (1.0 - s) * y;
      cplx sum{};
      for (std::size_t j = 0; j < n; ++j) sum += eval(j, q) * std::polar(1.0, -g.p.at(j) * y / g.hbar);
      out.m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = sum * g.p.step * scale;
    }
  }
  return out;
}

}  // namespace phasespace::reference
