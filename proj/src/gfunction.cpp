#include "phasespace/gfunction.hpp"

#include <cmath>
#include <random>

#include "phasespace/error.hpp"

namespace phasespace {

const char* to_string(Convention c) { return c == Convention::general_g ? "general-g" : "s-family"; }

double GFunction::norm2() const {
  double sum = 0.0;
  for (const auto& v : values) sum += std::norm(v);
  return sum * grid.step;
}

double PhaseSpaceWavefunction::norm2() const {
  double sum = 0.0;
  for (const auto& v : field.values) sum += std::norm(v);
  return sum * field.grid.cell() / (2.0 * pi * field.grid.hbar);
}

double g_norm_target(Convention c, double s) {
  if (c == Convention::general_g) return 1.0;
  require(std::abs(1.0 + s) > 1e-12, "g_norm_target: s = -1 has no unitarity target");
  return 2.0 / std::abs(1.0 + s);
}

double g_norm_residual(const GFunction& g, Convention c, double s) {
  const double n2 = g.norm2();
  require(n2 > 0.0, "g_norm_residual: g is identically zero");
  return std::abs(n2 - g_norm_target(c, s));
}

GFunction gaussian_g(const OscillatorUnits& u, const Grid1D& y) {
  GFunction g{y, std::vector<cplx>(y.n), std::nullopt};
  const double amp = std::pow(u.lambda * u.lambda * pi, -0.25);
  for (std::size_t k = 0; k < y.n; ++k) {
    const double x = y.at(k);
    g.values[k] = amp * std::exp(-x * x / (2.0 * u.lambda * u.lambda));
  }
  return g;
}

GFunction random_mixture_g(std::uint64_t seed, const Grid1D& y, Convention c, double s) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> centre(-1.0, 1.0);
  std::uniform_real_distribution<double> width(0.5, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  struct Blob {
    double c, w;
    cplx a;
  };
  std::vector<Blob> blobs;
  for (int k = 0; k < 3; ++k) {
    const double cc = centre(rng);
    const double ww = width(rng);
    const double re = normal(rng);
    const double im = normal(rng);
    blobs.push_back({cc, ww, cplx(re, im)});
  }
  GFunction g{y, std::vector<cplx>(y.n), c == Convention::s_family ? std::optional<double>(s) : std::nullopt};
  for (std::size_t k = 0; k < y.n; ++k) {
    const double x = y.at(k);
    for (const auto& b : blobs) g.values[k] += b.a * std::exp(-(x - b.c) * (x - b.c) / (2.0 * b.w * b.w));
  }
  const double scale = std::sqrt(g_norm_target(c, s) / g.norm2());
  for (auto& v : g.values) v *= scale;
  return g;
}

Grid1D extended_ygrid(const PhaseSpaceGrid& g, std::size_t count) {
  require(count >= 8, "extended_ygrid: need at least 8 points");
  return Grid1D(count, -0.5 * static_cast<double>(count) * g.q.step, g.q.step);
}

}  // namespace phasespace
