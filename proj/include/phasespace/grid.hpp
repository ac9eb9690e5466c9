#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "phasespace/exec.hpp"

namespace phasespace {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Uniform 1-D grid: coordinates min + k*step, k = 0..n-1.
/// n is a power of two and at least 8.
struct Grid1D {
  std::size_t n = 0;
  double min = 0.0;
  double step = 0.0;

  Grid1D() = default;
  Grid1D(std::size_t n, double min, double step);

  /// Grid on [-halfwidth, halfwidth) with n points.
  static Grid1D symmetric(std::size_t n, double halfwidth);

  double at(std::size_t k) const { return min + static_cast<double>(k) * step; }
  double max() const { return at(n - 1); }
  double length() const { return static_cast<double>(n) * step; }

  /// Offset of this grid's origin from `other`'s, in units of step; only
  /// meaningful when both grids share the step.
  double offset_in_steps(const Grid1D& other) const { return (min - other.min) / step; }

  bool same_as(const Grid1D& other, double tol = 1e-12) const;
  /// Same step and origins differing by a whole number of steps.
  bool aligned_with(const Grid1D& other, double tol = 1e-9) const;
};

/// Phase-space grid. The p grid is tied to the q grid by
/// p.step * q.step * q.n = 2 pi hbar, so rows pair exactly under the
/// discrete partial transform.
struct PhaseSpaceGrid {
  Grid1D q;
  Grid1D p;
  double hbar = 1.0;

  PhaseSpaceGrid() = default;
  PhaseSpaceGrid(Grid1D q, Grid1D p, double hbar);

  /// The displacement grid y dual to p under e^{-ipy/hbar}; it has the
  /// q step and is symmetric about zero.
  Grid1D ygrid() const { return Grid1D(p.n, -0.5 * static_cast<double>(p.n) * q.step, q.step); }

  std::size_t size() const { return q.n * p.n; }
  double cell() const { return q.step * p.step; }

  bool same_as(const PhaseSpaceGrid& other) const;
};

PhaseSpaceGrid make_phase_grid(std::size_t n, double q_halfwidth, double hbar);

/// The p grid conjugate to an arbitrary q grid (same n, symmetric about 0).
Grid1D conjugate_grid(const Grid1D& q, double hbar);

/// Which pair of variables a 2-D field is sampled over.
enum class Domain { qp, qy };

/// Complex samples over a phase-space grid, row-major [q][p] (or [q][y]).
struct ComplexField2D {
  PhaseSpaceGrid grid;
  Domain domain = Domain::qp;
  std::vector<cplx> values;

  ComplexField2D() = default;
  ComplexField2D(PhaseSpaceGrid g, Domain d = Domain::qp);
  ComplexField2D(PhaseSpaceGrid g, std::vector<cplx> v, Domain d = Domain::qp);

  std::size_t rows() const { return grid.q.n; }
  std::size_t cols() const { return grid.p.n; }

  cplx& operator()(std::size_t i, std::size_t j) { return values[i * cols() + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return values[i * cols() + j]; }

  std::span<cplx> row(std::size_t i) { return {values.data() + i * cols(), cols()}; }
  std::span<const cplx> row(std::size_t i) const { return {values.data() + i * cols(), cols()}; }

  bool all_finite() const;
};

enum class Measure { dqdp, dGamma };

// ---------------------------------------------------------------------
// Transforms along one row. `y` is the sample grid of `samples`; it may
// be longer than grid.p.n (an extended y range) provided it has the q
// step and is aligned with grid.ygrid(): samples are folded modulo the
// period n*dy before the DFT, which is exact at the p-grid points.

/// out[j] = sum_k dy samples[k] exp(-i p_j y_k / hbar)
void transform_y_to_p(std::span<const cplx> samples, const Grid1D& y, const PhaseSpaceGrid& grid,
                      std::span<cplx> out);

/// Exact inverse of transform_y_to_p onto grid.ygrid():
/// out[k] = (1 / 2 pi hbar) sum_j dp f[j] exp(+i p_j y_k / hbar)
void transform_p_to_y(std::span<const cplx> f, const PhaseSpaceGrid& grid, std::span<cplx> out);

/// f(q,p) = int chi(q,y) e^{-ipy/hbar} dy, row by row.
ComplexField2D partial_fourier_y_to_p(const ComplexField2D& chi, Exec exec = Exec::parallel);

/// chi(q,y) = (1/2 pi hbar) int f(q,p) e^{+ipy/hbar} dp, row by row.
ComplexField2D partial_fourier_p_to_y(const ComplexField2D& f, Exec exec = Exec::parallel);

/// Riemann sum of f over the grid; dGamma divides by 2 pi hbar.
cplx integrate_phase(const ComplexField2D& f, Measure measure);

/// Spectral (periodic) derivative d/dq along the q axis of a (q,p) field.
ComplexField2D spectral_dq(const ComplexField2D& f, Exec exec = Exec::parallel);

/// Spectral first / second derivative of 1-D periodic samples.
std::vector<cplx> spectral_derivative(std::span<const cplx> samples, double step, int order);

/// Largest magnitude among the first and last `width` samples.
double boundary_magnitude(std::span<const cplx> samples, std::size_t width = 1);

/// Zero-extension is allowed when the boundary magnitude is below this.
inline constexpr double kPaddingTolerance = 1e-9;

}  // namespace phasespace
