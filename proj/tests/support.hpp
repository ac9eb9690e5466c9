#pragma once

#include <cmath>
#include <vector>

#include "phasespace/quasidist.hpp"
#include "phasespace/states.hpp"

namespace testing {

using namespace phasespace;

inline const OscillatorUnits kUnits(1.0, 1.0, 1.0);

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

inline double max_abs_diff(const ComplexField2D& a, const ComplexField2D& b, double scale_b = 1.0) {
  double m = 0.0;
  for (std::size_t t = 0; t < a.values.size(); ++t) m = std::max(m, std::abs(a.values[t] - scale_b * b.values[t]));
  return m;
}

inline double max_abs(const ComplexField2D& a) {
  double m = 0.0;
  for (const auto& v : a.values) m = std::max(m, std::abs(v));
  return m;
}

inline DensityMatrix pure(const PositionWavefunction& phi) {
  std::vector<MixtureComponent> c{{1.0, phi}};
  return density_from_mixture(c);
}

// (-1)^n / (pi hbar) L_n(4H/hbar w) e^{-2H/hbar w}, units m = w = hbar = 1.
inline ComplexField2D analytic_wigner(int n, const PhaseSpaceGrid& g) {
  ComplexField2D f(g);
  for (std::size_t i = 0; i < g.q.n; ++i) {
    for (std::size_t j = 0; j < g.p.n; ++j) {
      const double H = 0.5 * (g.q.at(i) * g.q.at(i) + g.p.at(j) * g.p.at(j));
      f(i, j) = ((n % 2) ? -1.0 : 1.0) / pi * laguerre(n, 4.0 * H) * std::exp(-2.0 * H);
    }
  }
  return f;
}

template <class F>
ComplexField2D sample(const PhaseSpaceGrid& g, F f) {
  ComplexField2D out(g);
  for (std::size_t i = 0; i < g.q.n; ++i) {
    for (std::size_t j = 0; j < g.p.n; ++j) out(i, j) = f(g.q.at(i), g.p.at(j));
  }
  return out;
}

}  // namespace testing
