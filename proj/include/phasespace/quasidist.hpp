#pragma once

#include <Eigen/Dense>

#include <vector>

#include "phasespace/exec.hpp"
#include "phasespace/gfunction.hpp"
#include "phasespace/grid.hpp"
#include "phasespace/states.hpp"

namespace phasespace {

enum class DistributionKind { s_ordered, husimi };
enum class Source { pure, mixed };

const char* to_string(Source s);

/// W_s sampled over (q,p), integrating to one over dq dp; or the Husimi
/// function |<Gamma|phi>|^2, integrating to one over dGamma.
struct QuasiDistribution {
  ComplexField2D field;
  double s = 0.0;
  Source source = Source::pure;
  DistributionKind kind = DistributionKind::s_ordered;

  double normalization() const;  // Re int field dq dp
  double imag_max() const;
};

/// observable: m(i,j) = <q_i|F|q_j>, so the identity is I/dq.
/// density: the same layout for rho; symbols carry the extra 1/2 pi hbar.
enum class OperatorKind { observable, density };

struct OperatorMatrix {
  Grid1D grid;
  Eigen::MatrixXcd m;
  OperatorKind kind = OperatorKind::observable;

  bool hermitian(double tol = 1e-12) const;
};

OperatorMatrix identity_operator(const Grid1D& grid);
OperatorMatrix position_operator(const Grid1D& grid);
/// p^2/2m (circulant, spectral) + m omega^2 q^2 / 2.
OperatorMatrix harmonic_hamiltonian_operator(const OscillatorUnits& units, const Grid1D& grid);
OperatorMatrix density_operator(const DensityMatrix& rho);

/// Eigenvalues of the discrete operator m * dq (Hermitian part), ascending.
std::vector<double> operator_spectrum(const OperatorMatrix& F);

/// psi_s(q,p) = int dy e^{-ipy/hbar} conj(phi(q-(s+1)y/2)) phi(q+(1-s)y/2) = 2 pi hbar W_s.
PhaseSpaceWavefunction psi_s_pure(const PositionWavefunction& phi, double s, const PhaseSpaceGrid& grid,
                                  Exec exec = Exec::parallel);

QuasiDistribution wigner_from_pure(const PositionWavefunction& phi, const PhaseSpaceGrid& grid,
                                   Exec exec = Exec::parallel);

/// W_s = (1/2 pi hbar) int dy e^{ipy/hbar} <q-(1-s)y/2|rho|q+(1+s)y/2>, summed
/// over the eigenvectors of rho.
QuasiDistribution wigner_s_from_density(const DensityMatrix& rho, double s, const PhaseSpaceGrid& grid,
                                        Exec exec = Exec::parallel);

/// e^{-ipq/hbar} conj(phi~(p)) phi(q) / sqrt(2 pi hbar): the s = 1 member in
/// closed form.
QuasiDistribution kirkwood_rihaczek(const PositionWavefunction& phi, const PhaseSpaceGrid& grid);

/// |<Gamma|phi>|^2 from the coherent-state transform.
QuasiDistribution husimi(const PositionWavefunction& phi, const OscillatorUnits& units, const PhaseSpaceGrid& grid,
                         Exec exec = Exec::parallel);

struct Marginals {
  std::vector<double> q;  // int W dp
  std::vector<double> p;  // int W dq
  double imag_q = 0.0;    // largest imaginary part before taking Re
  double imag_p = 0.0;
  bool guaranteed = true; // false for Husimi: it smears both marginals
};

Marginals marginals(const QuasiDistribution& Q);

/// 2 pi hbar int W^2 dq dp; s = 0 only.
double purity_integral(const QuasiDistribution& Q);

/// Tr(F rho) = int W_s f_{-s} dq dp.
cplx expectation(const QuasiDistribution& W, const OperatorMatrix& F, Exec exec = Exec::parallel);

/// f(q,p) = int dy e^{ipy/hbar} <q-(1-s)y/2|F|q+(1+s)y/2>, divided by 2 pi hbar
/// for densities. The operator is read along wrapped diagonals, so the pair
/// with symbol_to_operator is an exact bijection on the grid.
ComplexField2D operator_to_symbol(const OperatorMatrix& F, double s, const PhaseSpaceGrid& grid,
                                  Exec exec = Exec::parallel);

/// Inverse of operator_to_symbol. Throws NumericalGuard when the Nyquist
/// y column carries more than 1e-8 of the symbol's energy.
OperatorMatrix symbol_to_operator(const ComplexField2D& f, double s, OperatorKind kind = OperatorKind::observable,
                                  Exec exec = Exec::parallel);

/// Fraction of energy in the Nyquist y column of f (aliasing diagnostic).
double nyquist_fraction(const ComplexField2D& f);

}  // namespace phasespace
