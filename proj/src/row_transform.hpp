#pragma once

#include <span>
#include <vector>

#include "phasespace/grid.hpp"

namespace phasespace::detail {

// Precomputed twiddles for the canonical y -> p row transform of one grid.
struct RowTransform {
  PhaseSpaceGrid grid;
  Grid1D y;
  std::vector<cplx> pre;   // e^{-i p_min k dy / hbar}
  std::vector<cplx> post;  // dy e^{-i p_j y_min / hbar}

  explicit RowTransform(const PhaseSpaceGrid& g);

  // Samples on an extended/aligned y grid, folded then transformed.
  void forward(std::span<const cplx> samples, const Grid1D& ys, std::span<cplx> out) const;
  // In place, samples already on the dual y grid.
  void forward(std::span<cplx> inout) const;
  void inverse(std::span<cplx> inout) const;
};

}  // namespace phasespace::detail
