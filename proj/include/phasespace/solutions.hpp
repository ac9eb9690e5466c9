#pragma once

#include "phasespace/exec.hpp"
#include "phasespace/gfunction.hpp"
#include "phasespace/states.hpp"

namespace phasespace {

/// psi(q,p) = e^{-iqp/2hbar} int g(y) phi(q+y) e^{-ipy/hbar} dy.
/// g's grid must carry the q step; phi(q+y) is then an exact grid sample
/// (zero outside, which the padding check on phi makes safe).
PhaseSpaceWavefunction solve_general_g(const PositionWavefunction& phi, const GFunction& g,
                                      const PhaseSpaceGrid& grid, Exec exec = Exec::parallel);

/// psi_s(q,p) = e^{-2ipq/hbar(s+1)} int dy e^{-ipy/hbar} g_s(y) phi(2q/(s+1) + (1-s)y/2),
/// phi off-grid by band-limited interpolation. s = 1 uses the closed form
/// e^{-ipq/hbar} g~(p) phi(q); s = -1 is rejected.
PhaseSpaceWavefunction solve_s_family(const PositionWavefunction& phi, const GFunction& g, double s,
                                      const PhaseSpaceGrid& grid, Exec exec = Exec::parallel);

/// g_s(y) = conj(phi(-(s+1)y/2)) on a y grid long enough to hold its support
/// (about 2n/|1+s| points, rounded up to a power of two).
GFunction wigner_conjugate_g(const PositionWavefunction& phi, double s, const PhaseSpaceGrid& grid);

/// g(y) = conj(phi(-y)): the choice that puts pi hbar W(q/2, p/2) among the
/// general-g solutions.
GFunction wigner_conjugate_g_general(const PositionWavefunction& phi, const PhaseSpaceGrid& grid);

}  // namespace phasespace
