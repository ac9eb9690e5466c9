#pragma once

// Naive direct-summation versions of the fast paths. Slow (n^3 or worse);
// they exist as independent oracles for tests and as the baseline in the
// benchmark.

#include "phasespace/gfunction.hpp"
#include "phasespace/kernels.hpp"
#include "phasespace/quasidist.hpp"

namespace phasespace::reference {

/// f(q,p) = sum_k dy chi(q,y_k) exp(-i p y_k / hbar), written out.
ComplexField2D partial_fourier_y_to_p(const ComplexField2D& chi);

/// psi_s by direct y quadrature with pointwise band-limited evaluation.
PhaseSpaceWavefunction psi_s_pure(const PositionWavefunction& phi, double s, const PhaseSpaceGrid& grid);

/// psi = sum_k K(Gamma; q'_k) phi_k dq from kernel columns.
PhaseSpaceWavefunction kernel_transform(const KernelSpec& spec, const PositionWavefunction& phi,
                                        const PhaseSpaceGrid& grid);

/// F(x1,x2) = (1/2 pi hbar) int dp f(x1 + (1-s) y/2, p) e^{-ipy/hbar}, y the
/// minimal-image separation x2 - x1 on the periodic grid, f evaluated from
/// its Fourier series in q. n <= 64.
OperatorMatrix symbol_to_operator_double_fourier(const ComplexField2D& f, double s,
                                                 OperatorKind kind = OperatorKind::observable);

}  // namespace phasespace::reference
