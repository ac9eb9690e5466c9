#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "phasespace/grid.hpp"
#include "phasespace/states.hpp"

namespace phasespace {

/// Which phase-space coordinates a wavefunction lives in. general_g uses
/// psi = e^{-iqp/2hbar} int g(y) phi(q+y) e^{-ipy/hbar} dy; s_family is the
/// s-ordered psi_s. The two are never mixed.
enum class Convention { general_g, s_family };

const char* to_string(Convention c);

/// Samples of g(y). The y grid must have the q step of the grid it is used
/// with and be aligned to it; it may be longer than n.
struct GFunction {
  Grid1D grid;
  std::vector<cplx> values;
  std::optional<double> target_s;  // s it was built for, if any

  double norm2() const;  // int |g|^2 dy
};

struct PhaseSpaceWavefunction {
  ComplexField2D field;
  Convention convention = Convention::s_family;

  /// int |psi|^2 dGamma.
  double norm2() const;
};

/// Unitarity target: 1 (general_g) or 2/|1+s| (s_family).
double g_norm_target(Convention c, double s = 0.0);

/// |int |g|^2 dy - target|. Rejects g == 0 and s = -1 (s_family).
double g_norm_residual(const GFunction& g, Convention c, double s = 0.0);

/// g(y) = (lambda^2 pi)^{-1/4} exp(-y^2 / 2 lambda^2), norm one.
GFunction gaussian_g(const OscillatorUnits& units, const Grid1D& y);

/// Seeded mixture of three complex-weighted Gaussians (centres in [-1,1],
/// widths in [0.5,1]), rescaled to the target norm of `c`/`s`.
GFunction random_mixture_g(std::uint64_t seed, const Grid1D& y, Convention c, double s = 0.0);

/// A y grid with the q step of `g`, aligned with g.ygrid(), holding
/// `count` points (power of two) centred on zero.
Grid1D extended_ygrid(const PhaseSpaceGrid& g, std::size_t count);

}  // namespace phasespace
