#include "phasespace/star.hpp"

#include <algorithm>
#include <cmath>

#include "phasespace/error.hpp"
#include "phasespace/quasidist.hpp"

namespace phasespace {

HamiltonianSpec HamiltonianSpec::harmonic(const OscillatorUnits& u, const Grid1D& grid) {
  HamiltonianSpec h;
  h.mass = u.mass;
  h.grid = grid;
  h.omega = u.omega;
  h.potential.resize(grid.n);
  for (std::size_t k = 0; k < grid.n; ++k) h.potential[k] = h.V(grid.at(k));
  return h;
}

HamiltonianSpec HamiltonianSpec::sampled(double mass, const Grid1D& grid, std::vector<double> potential) {
  require(mass > 0.0, "HamiltonianSpec: mass must be positive");
  require(potential.size() == grid.n, "HamiltonianSpec: potential length does not match grid");
  require(std::all_of(potential.begin(), potential.end(), [](double v) { return std::isfinite(v); }),
          "HamiltonianSpec: potential must be finite");
  HamiltonianSpec h;
  h.mass = mass;
  h.grid = grid;
  h.potential = std::move(potential);
  return h;
}

bool HamiltonianSpec::in_range(double x) const {
  return omega.has_value() || (x >= grid.min - 1e-12 * grid.step && x <= grid.max() + 1e-12 * grid.step);
}

double HamiltonianSpec::V(double x) const {
  if (omega) return 0.5 * mass * (*omega) * (*omega) * x * x;
  guard(in_range(x), "HamiltonianSpec: sampled potential needed outside its grid");
  const double u = (x - grid.min) / grid.step;
  const auto last = static_cast<long long>(grid.n) - 8;
  const auto j0 = std::clamp(static_cast<long long>(std::floor(u)) - 3, 0LL, last);
  double sum = 0.0;
  for (long long j = j0; j < j0 + 8; ++j) {
    double w = 1.0;
    for (long long m = j0; m < j0 + 8; ++m) {
      if (m != j) w *= (u - static_cast<double>(m)) / static_cast<double>(j - m);
    }
    sum += w * potential[static_cast<std::size_t>(j)];
  }
  return sum;
}

ComplexField2D HamiltonianSpec::symbol(const PhaseSpaceGrid& g) const {
  require(g.q.same_as(grid), "HamiltonianSpec::symbol: grid mismatch");
  ComplexField2D f(g, Domain::qp);
  for (std::size_t i = 0; i < g.q.n; ++i) {
    for (std::size_t j = 0; j < g.p.n; ++j) {
      const double p = g.p.at(j);
      f(i, j) = p * p / (2.0 * mass) + potential[i];
    }
  }
  return f;
}

namespace {

// H(q + a (i hbar/2) d_p, p + b (i hbar/2) d_q) f
ComplexField2D apply_shifted(const HamiltonianSpec& H, const ComplexField2D& f, double a, double b, Exec exec) {
  require(f.domain == Domain::qp, "star: field must be sampled over (q,p)");
  require(f.grid.q.same_as(H.grid), "star: Hamiltonian and field grids differ");
  require(f.all_finite(), "star: field has non-finite entries");
  const auto& g = f.grid;
  const auto n = g.q.n;
  const auto y = g.ygrid();

  auto chi = partial_fourier_p_to_y(f, exec);
  double peak = 0.0;
  for (const auto& v : chi.values) peak = std::max(peak, std::abs(v));
  const auto rows = static_cast<long long>(n);
  RegionErrors errors;
#pragma omp parallel for if (exec == Exec::parallel) schedule(static)
  for (long long ii = 0; ii < rows; ++ii) {
    errors.run([&] {
      const auto i = static_cast<std::size_t>(ii);
      for (std::size_t k = 0; k < n; ++k) {
        const double x = g.q.at(i) + 0.5 * a * y.at(k);
        auto& v = chi(i, k);
        if (!H.in_range(x)) {
          guard(std::abs(v) <= 1e-14 * peak, "star: shifted potential argument leaves the sampled range where the field is not negligible");
          v = 0.0;
          continue;
        }
        v *= H.V(x);
      }
    });
  }
  errors.rethrow();
  auto out = partial_fourier_y_to_p(chi, exec);

  const double c = 0.5 * b * g.hbar;
  auto D = [&](const ComplexField2D& h) {
    auto dq = spectral_dq(h, exec);
    ComplexField2D r(g, Domain::qp);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) r(i, j) = g.p.at(j) * h(i, j) + cplx(0.0, c) * dq(i, j);
    }
    return r;
  };
  const auto kin = D(D(f));
  const double inv2m = 1.0 / (2.0 * H.mass);
  for (std::size_t t = 0; t < out.values.size(); ++t) out.values[t] += inv2m * kin.values[t];
  return out;
}

}  // namespace

ComplexField2D star_apply_left(const HamiltonianSpec& H, const ComplexField2D& f, double s, Exec exec) {
  return apply_shifted(H, f, 1.0 - s, -(1.0 + s), exec);
}

ComplexField2D star_apply_right(const HamiltonianSpec& H, const ComplexField2D& f, double s, Exec exec) {
  return apply_shifted(H, f, -(1.0 + s), 1.0 - s, exec);
}

double masked_relative_norm(const ComplexField2D& r, const ComplexField2D& ref, double mask) {
  const auto nq = r.rows();
  const auto np = r.cols();
  const auto iq = static_cast<std::size_t>(std::ceil(mask * static_cast<double>(nq)));
  const auto ip = static_cast<std::size_t>(std::ceil(mask * static_cast<double>(np)));
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = iq; i < nq - iq; ++i) {
    for (std::size_t j = ip; j < np - ip; ++j) {
      num += std::norm(r(i, j));
      den += std::norm(ref(i, j));
    }
  }
  require(den > 0.0, "residual: reference field vanishes on the interior");
  return std::sqrt(num / den);
}

EigenResiduals eigen_residuals(const HamiltonianSpec& H, const ComplexField2D& f, double E, double s, Exec exec) {
  double fn = 0.0;
  for (const auto& v : f.values) fn += std::norm(v);
  require(fn > 0.0, "eigen_residuals: field is zero");
  EigenResiduals r;
  r.E = E;
  r.s = s;
  ComplexField2D ref = f;
  if (E != 0.0) {
    for (auto& v : ref.values) v *= E;
  }
  auto residual = [&](ComplexField2D hf) {
    for (std::size_t t = 0; t < hf.values.size(); ++t) hf.values[t] -= E * f.values[t];
    return masked_relative_norm(hf, ref, r.mask);
  };
  r.left = residual(star_apply_left(H, f, s, exec));
  r.right = residual(star_apply_right(H, f, s, exec));
  r.nyquist_fraction = nyquist_fraction(f);
  return r;
}

}  // namespace phasespace
