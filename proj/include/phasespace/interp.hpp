#pragma once

#include <span>
#include <vector>

#include "phasespace/exec.hpp"
#include "phasespace/grid.hpp"

namespace phasespace {

/// Band-limited (trigonometric) interpolation of samples on a uniform
/// grid, with the function taken as zero outside the grid. The samples
/// are zero-padded to twice the length before the spectrum is formed, so
/// evaluation points up to one half grid-length outside do not wrap back
/// into the support. Points further than one step outside the sampled
/// range evaluate to exactly zero.
///
/// Construction refuses samples whose boundary magnitude exceeds the
/// padding tolerance: zero-extending them would truncate real content.
class BandLimited {
 public:
  BandLimited(const Grid1D& grid, std::span<const cplx> samples, double padding_tol = kPaddingTolerance);

  const Grid1D& grid() const { return grid_; }

  cplx operator()(double x) const;

  /// out[i] = f(grid.at(i) + t), via one padded FFT.
  void shifted(double t, std::span<cplx> out) const;

  /// Row-major [a.size()][y.n] matrix of f(a[i] + gamma * y.at(k)).
  std::vector<cplx> affine(std::span<const double> a, double gamma, const Grid1D& y,
                           Exec exec = Exec::parallel) const;

 private:
  bool in_support(double x) const;

  Grid1D grid_;
  std::size_t padded_n_;
  double origin_;                 // left edge of the padded grid
  std::vector<cplx> spectrum_;    // FFT of padded samples / padded_n_
  std::vector<double> kappa_;     // wavenumbers, FFT order
  std::vector<std::size_t> active_;  // bins with non-negligible weight
};

}  // namespace phasespace
