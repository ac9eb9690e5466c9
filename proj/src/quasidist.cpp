#include "phasespace/quasidist.hpp"

#include <algorithm>
#include <cmath>

#include "phasespace/error.hpp"
#include "phasespace/fft.hpp"
#include "phasespace/interp.hpp"
#include "phasespace/kernels.hpp"
#include "row_transform.hpp"

namespace phasespace {

const char* to_string(Source s) { return s == Source::pure ? "pure" : "mixed"; }

double QuasiDistribution::normalization() const {
  return integrate_phase(field, kind == DistributionKind::husimi ? Measure::dGamma : Measure::dqdp).real();
}

double QuasiDistribution::imag_max() const {
  double m = 0.0;
  for (const auto& v : field.values) m = std::max(m, std::abs(v.imag()));
  return m;
}

bool OperatorMatrix::hermitian(double tol) const { return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol; }

OperatorMatrix identity_operator(const Grid1D& grid) {
  const auto n = static_cast<Eigen::Index>(grid.n);
  return {grid, Eigen::MatrixXcd::Identity(n, n) / grid.step, OperatorKind::observable};
}

OperatorMatrix position_operator(const Grid1D& grid) {
  const auto n = static_cast<Eigen::Index>(grid.n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = grid.at(static_cast<std::size_t>(i)) / grid.step;
  return {grid, std::move(m), OperatorKind::observable};
}

OperatorMatrix harmonic_hamiltonian_operator(const OscillatorUnits& u, const Grid1D& grid) {
  const auto n = grid.n;
  std::vector<cplx> t(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double kap = fft::wavenumber(k, n, grid.step);
    t[k] = u.hbar * u.hbar * kap * kap / (2.0 * u.mass);
  }
  fft::backward(t);
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd m(nn, nn);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t[(i + n - j) % n] / static_cast<double>(n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double q = grid.at(i);
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += 0.5 * u.mass * u.omega * u.omega * q * q;
  }
  m /= grid.step;
  return {grid, std::move(m), OperatorKind::observable};
}

OperatorMatrix density_operator(const DensityMatrix& rho) { return {rho.grid, rho.rho, OperatorKind::density}; }

std::vector<double> operator_spectrum(const OperatorMatrix& F) {
  Eigen::MatrixXcd a = 0.5 * (F.m + F.m.adjoint()) * F.grid.step;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

PhaseSpaceWavefunction psi_s_pure(const PositionWavefunction& phi, double s, const PhaseSpaceGrid& grid, Exec exec) {
  require(std::isfinite(s), "psi_s_pure: s must be finite");
  require(phi.grid.same_as(grid.q), "psi_s_pure: phi must be sampled on the q grid");
  const auto n = grid.q.n;
  const auto y = extended_ygrid(grid, 2 * n);
  const auto m = y.n;
  BandLimited bl(phi.grid, phi.values);
  std::vector<cplx> chi(n * m);
  const double a = 0.5 * (s + 1.0);
  const double b = 0.5 * (1.0 - s);
  const auto cols = static_cast<long long>(m);
  RegionErrors errors;
#pragma omp parallel if (exec == Exec::parallel)
  {
    std::vector<cplx> left(n);
    std::vector<cplx> right(n);
#pragma omp for schedule(static)
    for (long long kk = 0; kk < cols; ++kk) {
      errors.run([&] {
        const auto k = static_cast<std::size_t>(kk);
        const double yk = y.at(k);
        bl.shifted(-a * yk, left);
        bl.shifted(b * yk, right);
        for (std::size_t i = 0; i < n; ++i) chi[i * m + k] = std::conj(left[i]) * right[i];
      });
    }
  }
  errors.rethrow();
  detail::RowTransform tr(grid);
  ComplexField2D out(grid, Domain::qp);
  const auto rows = static_cast<long long>(n);
#pragma omp parallel for if (exec == Exec::parallel) schedule(static)
  for (long long i = 0; i < rows; ++i) {
    errors.run([&] {
      const auto ii = static_cast<std::size_t>(i);
      tr.forward(std::span<const cplx>(chi.data() + ii * m, m), y, out.row(ii));
    });
  }
  errors.rethrow();
  return {std::move(out), Convention::s_family};
}

QuasiDistribution wigner_from_pure(const PositionWavefunction& phi, const PhaseSpaceGrid& grid, Exec exec) {
  auto psi = psi_s_pure(phi, 0.0, grid, exec);
  const double scale = 1.0 / (2.0 * pi * grid.hbar);
  for (auto& v : psi.field.values) v = cplx(v.real() * scale, 0.0);
  return {std::move(psi.field), 0.0, Source::pure, DistributionKind::s_ordered};
}

QuasiDistribution wigner_s_from_density(const DensityMatrix& rho, double s, const PhaseSpaceGrid& grid, Exec exec) {
  require(rho.grid.same_as(grid.q), "wigner_s_from_density: rho must be sampled on the q grid");
  const double dq = grid.q.step;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.rho * dq);
  const auto& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  ComplexField2D acc(grid, Domain::qp);
  int rank = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (std::abs(ev(k)) <= 1e-12 * top) continue;
    ++rank;
    std::vector<cplx> v(grid.q.n);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = es.eigenvectors()(static_cast<Eigen::Index>(i), k) / std::sqrt(dq);
    const auto phi = PositionWavefunction::normalized(grid.q, std::move(v));
    const auto psi = psi_s_pure(phi, s, grid, exec);
    for (std::size_t t = 0; t < acc.values.size(); ++t) acc.values[t] += ev(k) * psi.field.values[t];
  }
  const double scale = 1.0 / (2.0 * pi * grid.hbar);
  for (auto& v : acc.values) v *= scale;
  if (s == 0.0) {
    for (auto& v : acc.values) v = cplx(v.real(), 0.0);
  }
  return {std::move(acc), s, rank > 1 ? Source::mixed : Source::pure, DistributionKind::s_ordered};
}

QuasiDistribution kirkwood_rihaczek(const PositionWavefunction& phi, const PhaseSpaceGrid& grid) {
  require(phi.grid.same_as(grid.q), "kirkwood_rihaczek: phi must be sampled on the q grid");
  const auto pt = momentum_representation(phi, grid.hbar);
  ComplexField2D f(grid, Domain::qp);
  const double scale = 1.0 / std::sqrt(2.0 * pi * grid.hbar);
  for (std::size_t i = 0; i < grid.q.n; ++i) {
    for (std::size_t j = 0; j < grid.p.n; ++j) {
      f(i, j) = scale * std::polar(1.0, -grid.p.at(j) * grid.q.at(i) / grid.hbar) * std::conj(pt.values[j]) *
                phi.values[i];
    }
  }
  return {std::move(f), 1.0, Source::pure, DistributionKind::s_ordered};
}

QuasiDistribution husimi(const PositionWavefunction& phi, const OscillatorUnits& units, const PhaseSpaceGrid& grid,
                         Exec exec) {
  require(std::abs(units.hbar - grid.hbar) <= 1e-14 * grid.hbar, "husimi: units and grid disagree on hbar");
  KernelSpec spec{CoherentStateKernel{units}, {}, {}};
  auto psi = kernel_transform(spec, phi, grid, exec);
  for (auto& v : psi.field.values) v = cplx(std::norm(v), 0.0);
  return {std::move(psi.field), 0.0, Source::pure, DistributionKind::husimi};
}

Marginals marginals(const QuasiDistribution& Q) {
  const auto& f = Q.field;
  const auto nq = f.rows();
  const auto np = f.cols();
  Marginals m;
  m.q.assign(nq, 0.0);
  m.p.assign(np, 0.0);
  std::vector<cplx> pq(nq), pp(np);
  for (std::size_t i = 0; i < nq; ++i) {
    for (std::size_t j = 0; j < np; ++j) {
      pq[i] += f(i, j);
      pp[j] += f(i, j);
    }
  }
  // Husimi values are densities in dGamma = dq dp / 2 pi hbar.
  const double w = Q.kind == DistributionKind::husimi ? 1.0 / (2.0 * pi * f.grid.hbar) : 1.0;
  for (std::size_t i = 0; i < nq; ++i) {
    pq[i] *= f.grid.p.step * w;
    m.q[i] = pq[i].real();
    m.imag_q = std::max(m.imag_q, std::abs(pq[i].imag()));
  }
  for (std::size_t j = 0; j < np; ++j) {
    pp[j] *= f.grid.q.step * w;
    m.p[j] = pp[j].real();
    m.imag_p = std::max(m.imag_p, std::abs(pp[j].imag()));
  }
  m.guaranteed = Q.kind == DistributionKind::s_ordered;
  return m;
}

double purity_integral(const QuasiDistribution& Q) {
  require(Q.kind == DistributionKind::s_ordered && Q.s == 0.0,
          "purity_integral: defined for the s = 0 Wigner function only");
  double sum = 0.0;
  for (const auto& v : Q.field.values) sum += v.real() * v.real();
  return sum * Q.field.grid.cell() * 2.0 * pi * Q.field.grid.hbar;
}

cplx expectation(const QuasiDistribution& W, const OperatorMatrix& F, Exec exec) {
  require(W.kind == DistributionKind::s_ordered, "expectation: needs an s-ordered distribution");
  require(F.grid.same_as(W.field.grid.q), "expectation: operator grid does not match the distribution");
  require(F.kind == OperatorKind::observable, "expectation: F must be an observable");
  const auto f = operator_to_symbol(F, -W.s, W.field.grid, exec);
  cplx sum{};
  for (std::size_t t = 0; t < f.values.size(); ++t) sum += W.field.values[t] * f.values[t];
  return sum * W.field.grid.cell();
}

namespace {

// out(x) = in(x + tau) for periodic samples; the multiplier e^{i kappa tau}
// has unit modulus on every bin, so the shift is exactly invertible.
void periodic_shift(std::vector<cplx>& v, double step, double tau) {
  const auto n = v.size();
  fft::forward(v);
  for (std::size_t k = 0; k < n; ++k) v[k] *= std::polar(1.0 / static_cast<double>(n), fft::wavenumber(k, n, step) * tau);
  fft::backward(v);
}

}  // namespace

ComplexField2D operator_to_symbol(const OperatorMatrix& F, double s, const PhaseSpaceGrid& grid, Exec exec) {
  require(std::isfinite(s), "operator_to_symbol: s must be finite");
  require(F.grid.same_as(grid.q), "operator_to_symbol: operator grid does not match the phase grid");
  const auto n = grid.q.n;
  const double dq = grid.q.step;
  const double a = 0.5 * (1.0 - s);
  const auto y = grid.ygrid();
  // chi[i][k] = F(q_i - a y_k, q_i - a y_k + y_k), y_k = d dq, d = k - n/2.
  std::vector<cplx> chi(n * n);
  const auto cols = static_cast<long long>(n);
  RegionErrors errors;
#pragma omp parallel if (exec == Exec::parallel)
  {
    std::vector<cplx> diag(n);
#pragma omp for schedule(static)
    for (long long kk = 0; kk < cols; ++kk) {
      errors.run([&] {
        const auto k = static_cast<std::size_t>(kk);
        const auto d = static_cast<long long>(k) - static_cast<long long>(n / 2);
        for (std::size_t m = 0; m < n; ++m) {
          const auto c = static_cast<std::size_t>(((static_cast<long long>(m) + d) % cols + cols) % cols);
          diag[m] = F.m(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(c));
        }
        if (d != 0 && a != 0.0) periodic_shift(diag, dq, -a * y.at(k));
        for (std::size_t i = 0; i < n; ++i) chi[i * n + k] = diag[i];
      });
    }
  }
  errors.rethrow();
  detail::RowTransform tr(grid);
  ComplexField2D out(grid, Domain::qp);
  const double scale = F.kind == OperatorKind::density ? 1.0 / (2.0 * pi * grid.hbar) : 1.0;
#pragma omp parallel for if (exec == Exec::parallel) schedule(static)
  for (long long i = 0; i < cols; ++i) {
    errors.run([&] {
      auto row = out.row(static_cast<std::size_t>(i));
      for (std::size_t k = 0; k < n; ++k) row[k] = std::conj(chi[static_cast<std::size_t>(i) * n + k]);
      tr.forward(row);
      for (auto& v : row) v = std::conj(v) * scale;
    });
  }
  errors.rethrow();
  return out;
}

namespace {

std::vector<cplx> symbol_rows_to_y(const ComplexField2D& f, double scale, Exec exec) {
  const auto n = f.rows();
  detail::RowTransform tr(f.grid);
  std::vector<cplx> chi(n * n);
  const auto rows = static_cast<long long>(n);
  RegionErrors errors;
#pragma omp parallel for if (exec == Exec::parallel) schedule(static)
  for (long long i = 0; i < rows; ++i) {
    errors.run([&] {
      std::span<cplx> row(chi.data() + static_cast<std::size_t>(i) * n, n);
      const auto src = f.row(static_cast<std::size_t>(i));
      for (std::size_t j = 0; j < n; ++j) row[j] = std::conj(src[j] * scale);
      tr.inverse(row);
      for (auto& v : row) v = std::conj(v);
    });
  }
  errors.rethrow();
  return chi;
}

double nyquist_fraction_of(const std::vector<cplx>& chi, std::size_t n) {
  double total = 0.0;
  double nyq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double e = std::norm(chi[i * n + k]);
      total += e;
      if (k == 0) nyq += e;
    }
  }
  return total > 0.0 ? nyq / total : 0.0;
}

}  // namespace

double nyquist_fraction(const ComplexField2D& f) {
  require(f.grid.q.n == f.grid.p.n, "nyquist_fraction: square grids only");
  return nyquist_fraction_of(symbol_rows_to_y(f, 1.0, Exec::serial), f.rows());
}

OperatorMatrix symbol_to_operator(const ComplexField2D& f, double s, OperatorKind kind, Exec exec) {
  require(std::isfinite(s), "symbol_to_operator: s must be finite");
  require(f.domain == Domain::qp, "symbol_to_operator: symbol must be sampled over (q,p)");
  require(f.all_finite(), "symbol_to_operator: symbol has non-finite entries");
  const auto& grid = f.grid;
  const auto n = grid.q.n;
  const double dq = grid.q.step;
  const double a = 0.5 * (1.0 - s);
  const double scale = kind == OperatorKind::density ? 2.0 * pi * grid.hbar : 1.0;
  auto chi = symbol_rows_to_y(f, scale, exec);
  const double frac = nyquist_fraction_of(chi, n);
  if (frac > 1e-8) {
    throw NumericalGuard("symbol_to_operator: symbol is aliased (Nyquist y-column carries " + std::to_string(frac) +
                         " of its energy); refine the q grid");
  }
  const auto y = grid.ygrid();
  const auto nn = static_cast<Eigen::Index>(n);
  OperatorMatrix out{grid.q, Eigen::MatrixXcd::Zero(nn, nn), kind};
  const auto cols = static_cast<long long>(n);
  RegionErrors errors;
#pragma omp parallel if (exec == Exec::parallel)
  {
    std::vector<cplx> diag(n);
#pragma omp for schedule(static)
    for (long long kk = 0; kk < cols; ++kk) {
      errors.run([&] {
        const auto k = static_cast<std::size_t>(kk);
        const auto d = static_cast<long long>(k) - static_cast<long long>(n / 2);
        for (std::size_t i = 0; i < n; ++i) diag[i] = chi[i * n + k];
        if (d != 0 && a != 0.0) periodic_shift(diag, dq, a * y.at(k));
        for (std::size_t m = 0; m < n; ++m) {
          const auto c = static_cast<std::size_t>(((static_cast<long long>(m) + d) % cols + cols) % cols);
          out.m(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(c)) = diag[m];
        }
      });
    }
  }
  errors.rethrow();
  return out;
}

}  // namespace phasespace
