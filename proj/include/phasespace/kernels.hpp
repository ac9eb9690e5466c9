#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "phasespace/exec.hpp"
#include "phasespace/gfunction.hpp"
#include "phasespace/states.hpp"

namespace phasespace {

/// K_CS = <Gamma|q'> = (lambda^2 pi)^{-1/4} exp(-(q'-q)^2/2 lambda^2 - ip(q'-q)/hbar).
struct CoherentStateKernel {
  OscillatorUnits units;
};

/// K_B(z;q') = (pi lambda^2)^{-1/4} exp(-(z^2 + x^2)/2 + sqrt2 z x), x = q'/lambda,
/// z = Gamma(q,p). Transforms are evaluated inside |z| <= radius only.
struct BargmannKernel {
  OscillatorUnits units;
  double radius = 4.0;
};

/// K_g = e^{-ip(q'-q/2)/hbar} g(q'-q).
struct GeneralGKernel {
  GFunction g;
};

/// K^s_g = (2/|1-s|) g_s(2q'/(1-s) - 4q/(1-s^2)) exp(-2ip(q'-q)/((1-s)hbar)).
/// s = 1 is the diagonal limit e^{-ipq/hbar} g~(p) delta(q-q').
struct SFamilyKernel {
  GFunction g;
  double s = 0.0;
};

using KernelVariant = std::variant<CoherentStateKernel, BargmannKernel, GeneralGKernel, SFamilyKernel>;

/// A kernel, optionally gauged: K -> e^{i f(q,p)} K with f real.
struct KernelSpec {
  KernelVariant base;
  std::function<double(double, double)> gauge;  // empty: no gauge
  std::string gauge_label;

  Convention convention() const;
};

/// Composes an additional gauge phase onto `spec`.
KernelSpec gauged(KernelSpec spec, std::function<double(double, double)> f, std::string label = "custom");

enum class KernelMeasure { dGamma, bargmann };

/// K(q_i, p_j; q') over the whole grid. With the bargmann measure the
/// Bargmann kernel is returned pre-weighted by e^{-|z|^2/2} (so the plain
/// dGamma pairing applies) and is not cut to the disk.
ComplexField2D kernel_column(const KernelSpec& spec, const PhaseSpaceGrid& grid, double qprime,
                             KernelMeasure measure = KernelMeasure::dGamma);

/// phi_Gamma(q') = conj K(Gamma; q') on the q grid.
std::vector<cplx> transition_state(const KernelSpec& spec, const PhaseSpaceGrid& grid, double q, double p);

struct SampledKernel {
  PhaseSpaceGrid grid;
  std::vector<cplx> values;  // [i][j][k] = K(q_i, p_j; q'_k)

  cplx operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return values[(i * grid.p.n + j) * grid.q.n + k];
  }
};

/// The s = 1 kernel as an operator: psi = e^{-ipq/hbar} g~(p) phi(q).
struct DiagonalKernelOperator {
  PhaseSpaceGrid grid;
  std::vector<cplx> gtilde;  // int g(y) e^{-ipy/hbar} dy on the p grid

  PhaseSpaceWavefunction apply(const PositionWavefunction& phi) const;
};

using BuiltKernel = std::variant<SampledKernel, DiagonalKernelOperator>;

/// Dense kernel for n <= 128 (n^3 entries), or the s = 1 operator.
BuiltKernel build_kernel(const KernelSpec& spec, const PhaseSpaceGrid& grid);

/// psi(Gamma) = int K(Gamma;q') phi(q') dq' by the fast separable paths.
PhaseSpaceWavefunction kernel_transform(const KernelSpec& spec, const PositionWavefunction& phi,
                                        const PhaseSpaceGrid& grid, Exec exec = Exec::parallel);

struct UnitarityReport {
  double residual = 0.0;          // max |M(q',q'') - delta/dq| over the probe set
  double diagonal_factor = 0.0;   // mean M(q',q') dq
  double off_diagonal_max = 0.0;  // max |M(q',q'')|, q' != q''
  std::size_t probes = 0;
};

/// M(q',q'') = int conj K(Gamma;q') K(Gamma;q'') dGamma (or d mu for Bargmann)
/// on a fixed interior probe set of index pairs plus one adjacent pair.
UnitarityReport check_kernel_unitarity(const KernelSpec& spec, const PhaseSpaceGrid& grid, KernelMeasure measure,
                                       Exec exec = Exec::parallel);

/// psi' = e^{i f} psi; f must be real.
PhaseSpaceWavefunction gauge_transform(const PhaseSpaceWavefunction& psi, const ComplexField2D& f);
PhaseSpaceWavefunction gauge_transform(const PhaseSpaceWavefunction& psi, const std::function<double(double, double)>& f);

/// Plain-text kernel description, one `key = value` per line, `#` comments:
///   variant = coherent | bargmann | general-g | s-family
///   s = <real>            (s-family)
///   lambda = <real>       (coherent/bargmann width, and gaussian g width)
///   g = gaussian | random (general-g / s-family)
///   seed = <u64>          (random g)
///   radius = <real>       (bargmann disk)
///   gauge = <real a>      (f(q,p) = a q p / hbar; 0 or absent: none)
struct KernelConfig {
  std::string variant = "coherent";
  double s = 0.0;
  double lambda = 1.0;
  std::string g = "gaussian";
  std::uint64_t seed = 7;
  double radius = 4.0;
  double gauge = 0.0;

  std::map<std::string, std::string> as_map() const;
};

KernelConfig parse_kernel_config(const std::string& text);
KernelConfig load_kernel_config(const std::string& path);
KernelSpec make_kernel_spec(const KernelConfig& cfg, const PhaseSpaceGrid& grid);

}  // namespace phasespace
