#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "phasespace/grid.hpp"

namespace phasespace {

/// Oscillator mass, frequency and hbar, with the derived length scale
/// lambda = sqrt(hbar / (m omega)).
struct OscillatorUnits {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double lambda = 1.0;

  OscillatorUnits() = default;
  OscillatorUnits(double mass, double omega, double hbar);

  double energy(int n) const { return hbar * omega * (n + 0.5); }
};

/// Samples of phi(q) on a uniform grid, unit L2 norm. `energy` is set for
/// eigenstates and carried along by every transform that preserves it.
struct PositionWavefunction {
  Grid1D grid;
  std::vector<cplx> values;
  std::optional<double> energy;

  /// Normalizes the samples; rejects a zero or non-finite vector.
  static PositionWavefunction normalized(const Grid1D& grid, std::vector<cplx> values,
                                         std::optional<double> energy = std::nullopt);

  double norm() const;  // sqrt(sum |phi|^2 dq)
};

/// rho(i,j) = <q_i|rho|q_j>; the discrete operator is rho * dq.
struct DensityMatrix {
  Grid1D grid;
  Eigen::MatrixXcd rho;

  double trace() const;
  double purity() const;              // Tr rho^2
  double hermiticity_error() const;   // max |rho_ij - conj(rho_ji)|
  double min_eigenvalue() const;      // of rho * dq
  void validate() const;              // throws InvalidArgument on violation
};

struct MixtureComponent {
  double weight = 0.0;
  PositionWavefunction state;
};

/// L_n(x) by the three-term recurrence; n <= 64.
double laguerre(int n, double x);

/// Dimensionless normalized Hermite function psi_n(x), built by the
/// normalized recurrence (no H_n overflow).
double hermite_function(int n, double x);

/// n-th oscillator eigenstate phi_n(q) = lambda^{-1/2} psi_n(q / lambda),
/// energy attached. Refuses grids narrower than 2 lambda sqrt(2n+1).
PositionWavefunction hermite_eigenstate(int n, const OscillatorUnits& units, const Grid1D& grid);

/// Gamma = (q / lambda + i lambda p / hbar) / sqrt(2) and its inverse.
cplx gamma_of(double q, double p, const OscillatorUnits& units);
std::pair<double, double> qp_of(cplx gamma, const OscillatorUnits& units);

/// <q'|Gamma> = (lambda^2 pi)^{-1/4} exp(-(q'-q)^2 / 2 lambda^2 + i p (q'-q) / hbar).
PositionWavefunction coherent_wavefunction(cplx gamma, const OscillatorUnits& units, const Grid1D& grid);

/// <a|b> = sum conj(a) b dq.
cplx inner_product(const PositionWavefunction& a, const PositionWavefunction& b);

/// rho = sum_k w_k |phi_k><phi_k|.
DensityMatrix density_from_mixture(std::span<const MixtureComponent> components);

/// phi~(p) = (2 pi hbar)^{-1/2} int phi(q) e^{-ipq/hbar} dq on the conjugate p grid.
PositionWavefunction momentum_representation(const PositionWavefunction& phi, double hbar);

/// ||-hbar^2/2m phi'' + V phi - E phi|| / ||phi|| with spectral phi''.
double schrodinger_residual(const PositionWavefunction& phi, double mass, std::span<const double> potential,
                            double energy, double hbar);

}  // namespace phasespace
