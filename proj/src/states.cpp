#include "phasespace/states.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "phasespace/error.hpp"

namespace phasespace {

OscillatorUnits::OscillatorUnits(double m, double w, double h)
    : mass(m), omega(w), hbar(h), lambda(std::sqrt(h / (m * w))) {
  require(m > 0.0 && w > 0.0 && h > 0.0, "OscillatorUnits: mass, omega and hbar must be positive");
}

PositionWavefunction PositionWavefunction::normalized(const Grid1D& grid, std::vector<cplx> values,
                                                      std::optional<double> energy) {
  require(values.size() == grid.n, "PositionWavefunction: sample count does not match grid");
  double sum = 0.0;
  for (const auto& v : values) {
    require(std::isfinite(v.real()) && std::isfinite(v.imag()), "PositionWavefunction: non-finite sample");
    sum += std::norm(v);
  }
  sum *= grid.step;
  require(sum > 0.0, "PositionWavefunction: zero vector cannot be normalized");
  const double scale = 1.0 / std::sqrt(sum);
  for (auto& v : values) v *= scale;
  return PositionWavefunction{grid, std::move(values), energy};
}

double PositionWavefunction::norm() const {
  double sum = 0.0;
  for (const auto& v : values) sum += std::norm(v);
  return std::sqrt(sum * grid.step);
}

double DensityMatrix::trace() const { return rho.diagonal().real().sum() * grid.step; }

double DensityMatrix::purity() const { return rho.cwiseAbs2().sum() * grid.step * grid.step; }

double DensityMatrix::hermiticity_error() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho * grid.step, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void DensityMatrix::validate() const {
  require(rho.rows() == static_cast<Eigen::Index>(grid.n) && rho.cols() == rho.rows(),
          "DensityMatrix: shape does not match grid");
  require(hermiticity_error() <= 1e-12, "DensityMatrix: not Hermitian");
  require(std::abs(trace() - 1.0) <= 1e-8, "DensityMatrix: trace is not one");
  require(min_eigenvalue() >= -1e-8, "DensityMatrix: not positive semidefinite");
}

double laguerre(int n, double x) {
  require(n >= 0 && n <= 64, "laguerre: degree must be in [0, 64]");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_function(int n, double x) {
  require(n >= 0 && n <= 64, "hermite_function: index must be in [0, 64]");
  double prev = 0.0;
  double cur = std::pow(pi, -0.25) * std::exp(-0.5 * x * x);
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1.0)) * x * cur - std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

PositionWavefunction hermite_eigenstate(int n, const OscillatorUnits& units, const Grid1D& grid) {
  require(n >= 0 && n <= 64, "hermite_eigenstate: index must be in [0, 64]");
  const double needed = units.lambda * 2.0 * std::sqrt(2.0 * n + 1.0);
  if (-grid.min < needed || grid.max() + grid.step < needed) {
    std::ostringstream msg;
    msg << "hermite_eigenstate: grid halfwidth must be at least " << needed << " for n=" << n;
    throw NumericalGuard(msg.str());
  }
  std::vector<cplx> v(grid.n);
  const double scale = 1.0 / std::sqrt(units.lambda);
  for (std::size_t k = 0; k < grid.n; ++k) v[k] = scale * hermite_function(n, grid.at(k) / units.lambda);
  return PositionWavefunction::normalized(grid, std::move(v), units.energy(n));
}

cplx gamma_of(double q, double p, const OscillatorUnits& u) {
  return cplx(q / u.lambda, u.lambda * p / u.hbar) / std::sqrt(2.0);
}

std::pair<double, double> qp_of(cplx gamma, const OscillatorUnits& u) {
  return {std::sqrt(2.0) * u.lambda * gamma.real(), std::sqrt(2.0) * u.hbar * gamma.imag() / u.lambda};
}

PositionWavefunction coherent_wavefunction(cplx gamma, const OscillatorUnits& u, const Grid1D& grid) {
  const auto [q0, p0] = qp_of(gamma, u);
  const double amp = std::pow(u.lambda * u.lambda * pi, -0.25);
  std::vector<cplx> v(grid.n);
  for (std::size_t k = 0; k < grid.n; ++k) {
    const double d = grid.at(k) - q0;
    v[k] = amp * std::exp(-d * d / (2.0 * u.lambda * u.lambda)) * std::polar(1.0, p0 * d / u.hbar);
  }
  guard(boundary_magnitude(v) <= kPaddingTolerance, "coherent_wavefunction: displaced state is not supported on the grid");
  guard(std::abs(p0) + 6.0 * u.hbar / u.lambda < pi * u.hbar / grid.step,
        "coherent_wavefunction: momentum exceeds the grid's Nyquist range");
  return PositionWavefunction::normalized(grid, std::move(v));
}

cplx inner_product(const PositionWavefunction& a, const PositionWavefunction& b) {
  require(a.grid.same_as(b.grid), "inner_product: grid mismatch");
  cplx sum{};
  for (std::size_t k = 0; k < a.values.size(); ++k) sum += std::conj(a.values[k]) * b.values[k];
  return sum * a.grid.step;
}

DensityMatrix density_from_mixture(std::span<const MixtureComponent> components) {
  require(!components.empty(), "density_from_mixture: no components");
  const auto& grid = components.front().state.grid;
  double total = 0.0;
  for (const auto& c : components) {
    require(c.weight >= 0.0, "density_from_mixture: negative weight");
    require(c.state.grid.same_as(grid), "density_from_mixture: components live on different grids");
    total += c.weight;
  }
  require(std::abs(total - 1.0) <= 1e-10, "density_from_mixture: weights must sum to one");
  const auto n = static_cast<Eigen::Index>(grid.n);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& c : components) {
    Eigen::Map<const Eigen::VectorXcd> v(c.state.values.data(), n);
    rho.noalias() += c.weight * v * v.adjoint();
  }
  // Symmetrize away rounding so the Hermitian invariant holds exactly.
  Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
  DensityMatrix out{grid, std::move(herm)};
  out.validate();
  return out;
}

PositionWavefunction momentum_representation(const PositionWavefunction& phi, double hbar) {
  require(hbar > 0.0, "momentum_representation: hbar must be positive");
  PhaseSpaceGrid g(phi.grid, conjugate_grid(phi.grid, hbar), hbar);
  std::vector<cplx> out(phi.grid.n);
  transform_y_to_p(phi.values, phi.grid, g, out);
  const double scale = 1.0 / std::sqrt(2.0 * pi * hbar);
  for (auto& v : out) v *= scale;
  return PositionWavefunction::normalized(g.p, std::move(out), phi.energy);
}

double schrodinger_residual(const PositionWavefunction& phi, double mass, std::span<const double> potential,
                            double energy, double hbar) {
  require(potential.size() == phi.values.size(), "schrodinger_residual: potential length mismatch");
  auto d2 = spectral_derivative(phi.values, phi.grid.step, 2);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < d2.size(); ++k) {
    const cplx r = -hbar * hbar / (2.0 * mass) * d2[k] + (potential[k] - energy) * phi.values[k];
    num += std::norm(r);
    den += std::norm(phi.values[k]);
  }
  return std::sqrt(num / den);
}

}  // namespace phasespace
