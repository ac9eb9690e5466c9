#include "phasespace/grid.hpp"

#include <algorithm>
#include <cmath>

#include "phasespace/error.hpp"
#include "phasespace/fft.hpp"
#include "row_transform.hpp"

namespace phasespace {

Grid1D::Grid1D(std::size_t n_, double min_, double step_) : n(n_), min(min_), step(step_) {
  require(n >= 8, "Grid1D: need at least 8 samples");
  require(fft::is_power_of_two(n), "Grid1D: sample count must be a power of two");
  require(std::isfinite(min) && std::isfinite(step) && step > 0.0, "Grid1D: step must be positive and finite");
}

Grid1D Grid1D::symmetric(std::size_t n, double halfwidth) {
  require(halfwidth > 0.0 && std::isfinite(halfwidth), "Grid1D: halfwidth must be positive");
  return Grid1D(n, -halfwidth, 2.0 * halfwidth / static_cast<double>(n));
}

bool Grid1D::same_as(const Grid1D& o, double tol) const {
  return n == o.n && std::abs(step - o.step) <= tol * step && std::abs(min - o.min) <= tol * std::max(1.0, std::abs(min));
}

bool Grid1D::aligned_with(const Grid1D& o, double tol) const {
  if (std::abs(step - o.step) > 1e-12 * step) return false;
  const double off = offset_in_steps(o);
  return std::abs(off - std::round(off)) <= tol;
}

PhaseSpaceGrid::PhaseSpaceGrid(Grid1D q_, Grid1D p_, double hbar_) : q(q_), p(p_), hbar(hbar_) {
  require(hbar > 0.0 && std::isfinite(hbar), "PhaseSpaceGrid: hbar must be positive");
  require(p.n == q.n, "PhaseSpaceGrid: p and q grids must have equal sample counts");
  const double pairing = p.step * q.step * static_cast<double>(q.n);
  require(std::abs(pairing - 2.0 * pi * hbar) <= 1e-10 * 2.0 * pi * hbar,
          "PhaseSpaceGrid: p.step * q.step * n must equal 2 pi hbar");
  require(std::abs(p.min + 0.5 * static_cast<double>(p.n) * p.step) <= 1e-10 * p.step * static_cast<double>(p.n),
          "PhaseSpaceGrid: p grid must be symmetric, starting at -n/2 * p.step");
}

bool PhaseSpaceGrid::same_as(const PhaseSpaceGrid& o) const {
  return q.same_as(o.q) && p.same_as(o.p) && std::abs(hbar - o.hbar) <= 1e-14 * hbar;
}

Grid1D conjugate_grid(const Grid1D& q, double hbar) {
  const double dp = 2.0 * pi * hbar / (static_cast<double>(q.n) * q.step);
  return Grid1D(q.n, -0.5 * static_cast<double>(q.n) * dp, dp);
}

PhaseSpaceGrid make_phase_grid(std::size_t n, double q_halfwidth, double hbar) {
  require(q_halfwidth > 0.0, "make_phase_grid: q_halfwidth must be positive");
  require(hbar > 0.0, "make_phase_grid: hbar must be positive");
  auto q = Grid1D::symmetric(n, q_halfwidth);
  return PhaseSpaceGrid(q, conjugate_grid(q, hbar), hbar);
}

ComplexField2D::ComplexField2D(PhaseSpaceGrid g, Domain d) : grid(g), domain(d), values(g.size()) {}

ComplexField2D::ComplexField2D(PhaseSpaceGrid g, std::vector<cplx> v, Domain d)
    : grid(g), domain(d), values(std::move(v)) {
  require(values.size() == grid.size(), "ComplexField2D: value count does not match grid");
}

bool ComplexField2D::all_finite() const {
  return std::all_of(values.begin(), values.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

// ---------------------------------------------------------------------

namespace detail {

RowTransform::RowTransform(const PhaseSpaceGrid& g) : grid(g), y(g.ygrid()) {
  const auto n = grid.p.n;
  pre.resize(n);
  post.resize(n);
  const double dy = y.step;
  for (std::size_t k = 0; k < n; ++k) {
    pre[k] = std::polar(1.0, -grid.p.min * static_cast<double>(k) * dy / grid.hbar);
  }
  for (std::size_t j = 0; j < n; ++j) {
    post[j] = dy * std::polar(1.0, -grid.p.at(j) * y.min / grid.hbar);
  }
}

void RowTransform::forward(std::span<const cplx> samples, const Grid1D& ys, std::span<cplx> out) const {
  const auto n = grid.p.n;
  require(out.size() == n, "transform_y_to_p: output length mismatch");
  require(samples.size() == ys.n, "transform_y_to_p: sample count does not match y grid");
  require(ys.aligned_with(y), "transform_y_to_p: y grid must share the q step and be aligned with the dual grid");
  std::fill(out.begin(), out.end(), cplx{});
  const auto shift = static_cast<long long>(std::llround(ys.offset_in_steps(y)));
  const auto nn = static_cast<long long>(n);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    long long idx = (static_cast<long long>(k) + shift) % nn;
    if (idx < 0) idx += nn;
    out[static_cast<std::size_t>(idx)] += samples[k];
  }
  for (std::size_t k = 0; k < n; ++k) out[k] *= pre[k];
  fft::forward(out);
  for (std::size_t j = 0; j < n; ++j) out[j] *= post[j];
}

void RowTransform::forward(std::span<cplx> inout) const {
  const auto n = grid.p.n;
  for (std::size_t k = 0; k < n; ++k) inout[k] *= pre[k];
  fft::forward(inout);
  for (std::size_t j = 0; j < n; ++j) inout[j] *= post[j];
}

void RowTransform::inverse(std::span<cplx> inout) const {
  const auto n = grid.p.n;
  for (std::size_t j = 0; j < n; ++j) inout[j] /= post[j];
  fft::backward(inout);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) inout[k] *= scale / pre[k];
}

}  // namespace detail

void transform_y_to_p(std::span<const cplx> samples, const Grid1D& y, const PhaseSpaceGrid& grid,
                      std::span<cplx> out) {
  detail::RowTransform(grid).forward(samples, y, out);
}

void transform_p_to_y(std::span<const cplx> f, const PhaseSpaceGrid& grid, std::span<cplx> out) {
  require(f.size() == grid.p.n && out.size() == grid.p.n, "transform_p_to_y: length mismatch");
  std::copy(f.begin(), f.end(), out.begin());
  detail::RowTransform(grid).inverse(out);
}

ComplexField2D partial_fourier_y_to_p(const ComplexField2D& chi, Exec exec) {
  require(chi.domain == Domain::qy, "partial_fourier_y_to_p: input must be sampled over (q,y)");
  ComplexField2D out(chi.grid, chi.values, Domain::qp);
  detail::RowTransform tr(chi.grid);
  const auto rows = static_cast<long long>(chi.rows());
  RegionErrors errors;
#pragma omp parallel for if (exec == Exec::parallel) schedule(static)
  for (long long i = 0; i < rows; ++i) {
    errors.run([&] { tr.forward(out.row(static_cast<std::size_t>(i))); });
  }
  errors.rethrow();
  return out;
}

ComplexField2D partial_fourier_p_to_y(const ComplexField2D& f, Exec exec) {
  require(f.domain == Domain::qp, "partial_fourier_p_to_y: input must be sampled over (q,p)");
  ComplexField2D out(f.grid, f.values, Domain::qy);
  detail::RowTransform tr(f.grid);
  const auto rows = static_cast<long long>(f.rows());
  RegionErrors errors;
#pragma omp parallel for if (exec == Exec::parallel) schedule(static)
  for (long long i = 0; i < rows; ++i) {
    errors.run([&] { tr.inverse(out.row(static_cast<std::size_t>(i))); });
  }
  errors.rethrow();
  return out;
}

cplx integrate_phase(const ComplexField2D& f, Measure measure) {
  require(f.all_finite(), "integrate_phase: field has non-finite entries");
  cplx sum{};
  for (const auto& v : f.values) sum += v;
  sum *= f.grid.cell();
  if (measure == Measure::dGamma) sum /= 2.0 * pi * f.grid.hbar;
  return sum;
}

std::vector<cplx> spectral_derivative(std::span<const cplx> samples, double step, int order) {
  std::vector<cplx> buf(samples.begin(), samples.end());
  const auto n = buf.size();
  fft::forward(buf);
  for (std::size_t j = 0; j < n; ++j) {
    double k = fft::wavenumber(j, n, step);
    // The Nyquist bin has no sign; an odd derivative of it is dropped.
    if (j == n / 2 && order % 2 == 1) k = 0.0;
    buf[j] *= std::pow(cplx(0.0, k), order);
  }
  fft::backward(buf);
  for (auto& v : buf) v /= static_cast<double>(n);
  return buf;
}

ComplexField2D spectral_dq(const ComplexField2D& f, Exec exec) {
  const auto nq = f.rows();
  const auto np = f.cols();
  ComplexField2D out(f.grid, f.domain);
  std::vector<cplx> k(nq);
  for (std::size_t i = 0; i < nq; ++i) {
    k[i] = (i == nq / 2) ? cplx{} : cplx(0.0, fft::wavenumber(i, nq, f.grid.q.step));
  }
  const auto cols = static_cast<long long>(np);
  RegionErrors errors;
#pragma omp parallel if (exec == Exec::parallel)
  {
    std::vector<cplx> col(nq);
#pragma omp for schedule(static)
    for (long long jj = 0; jj < cols; ++jj) {
      errors.run([&] {
        const auto j = static_cast<std::size_t>(jj);
        for (std::size_t i = 0; i < nq; ++i) col[i] = f(i, j);
        fft::forward(col);
        for (std::size_t i = 0; i < nq; ++i) col[i] *= k[i] / static_cast<double>(nq);
        fft::backward(col);
        for (std::size_t i = 0; i < nq; ++i) out(i, j) = col[i];
      });
    }
  }
  errors.rethrow();
  return out;
}

double boundary_magnitude(std::span<const cplx> samples, std::size_t width) {
  double m = 0.0;
  const auto n = samples.size();
  for (std::size_t k = 0; k < std::min(width, n); ++k) {
    m = std::max({m, std::abs(samples[k]), std::abs(samples[n - 1 - k])});
  }
  return m;
}

}  // namespace phasespace
