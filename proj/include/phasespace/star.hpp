#pragma once

#include <optional>
#include <vector>

#include "phasespace/exec.hpp"
#include "phasespace/grid.hpp"
#include "phasespace/states.hpp"

namespace phasespace {

/// H(q,p) = p^2/2m + V(q). V is either the analytic oscillator potential
/// or samples on `grid`, interpolated (8-point Lagrange) at shifted
/// arguments and never extrapolated.
struct HamiltonianSpec {
  double mass = 1.0;
  Grid1D grid;
  std::vector<double> potential;
  std::optional<double> omega;  // set: V = m omega^2 q^2 / 2 exactly

  static HamiltonianSpec harmonic(const OscillatorUnits& units, const Grid1D& grid);
  static HamiltonianSpec sampled(double mass, const Grid1D& grid, std::vector<double> potential);

  /// V at an arbitrary point; sampled potentials throw NumericalGuard off-grid.
  double V(double x) const;
  bool in_range(double x) const;

  ComplexField2D symbol(const PhaseSpaceGrid& g) const;
};

/// H *_s f = H(q + (1-s)(i hbar/2) d_p, p - (1+s)(i hbar/2) d_q) f, exactly:
/// in the mixed (q,y) representation i hbar d_p is multiplication by y.
ComplexField2D star_apply_left(const HamiltonianSpec& H, const ComplexField2D& f, double s,
                               Exec exec = Exec::parallel);

/// f *_s H = H(q - (1+s)(i hbar/2) d_p, p + (1-s)(i hbar/2) d_q) f.
ComplexField2D star_apply_right(const HamiltonianSpec& H, const ComplexField2D& f, double s,
                                Exec exec = Exec::parallel);

struct EigenResiduals {
  double left = 0.0;   // ||H * f - E f|| / ||E f|| on the interior
  double right = 0.0;  // ||f * H - E f|| / ||E f||
  double E = 0.0;
  double s = 0.0;
  double mask = 0.1;             // fraction dropped at each end of both axes
  double nyquist_fraction = 0.0; // aliasing diagnostic of f
};

/// Relative residuals on the interior (outer 10% of each axis masked).
/// With E = 0 the norm of f is used as the reference instead.
EigenResiduals eigen_residuals(const HamiltonianSpec& H, const ComplexField2D& f, double E, double s,
                               Exec exec = Exec::parallel);

/// ||r|| / ||ref|| over the masked interior.
double masked_relative_norm(const ComplexField2D& r, const ComplexField2D& ref, double mask = 0.1);

}  // namespace phasespace
