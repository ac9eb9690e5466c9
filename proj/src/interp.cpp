#include "phasespace/interp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "phasespace/error.hpp"
#include "phasespace/fft.hpp"

namespace phasespace {

BandLimited::BandLimited(const Grid1D& grid, std::span<const cplx> samples, double padding_tol)
    : grid_(grid), padded_n_(2 * grid.n) {
  require(samples.size() == grid.n, "BandLimited: sample count does not match grid");
  const double edge = boundary_magnitude(samples);
  if (edge > padding_tol) {
    std::ostringstream msg;
    msg << "BandLimited: boundary magnitude " << edge << " exceeds padding tolerance " << padding_tol
        << "; the function does not decay inside its grid";
    throw NumericalGuard(msg.str());
  }
  const auto lead = grid.n / 2;
  origin_ = grid.min - static_cast<double>(lead) * grid.step;
  spectrum_.assign(padded_n_, cplx{});
  std::copy(samples.begin(), samples.end(), spectrum_.begin() + static_cast<std::ptrdiff_t>(lead));
  fft::forward(spectrum_);
  double peak = 0.0;
  for (auto& c : spectrum_) {
    c /= static_cast<double>(padded_n_);
    peak = std::max(peak, std::abs(c));
  }
  kappa_.resize(padded_n_);
  for (std::size_t j = 0; j < padded_n_; ++j) {
    kappa_[j] = fft::wavenumber(j, padded_n_, grid.step);
    if (std::abs(spectrum_[j]) > 1e-17 * peak) active_.push_back(j);
  }
}

bool BandLimited::in_support(double x) const {
  return x >= grid_.min - grid_.step && x <= grid_.max() + grid_.step;
}

cplx BandLimited::operator()(double x) const {
  if (!in_support(x)) return {};
  const double u = x - origin_;
  const auto nyq = padded_n_ / 2;
  cplx sum{};
  for (auto j : active_) {
    if (j == nyq) {
      sum += spectrum_[j] * std::cos(kappa_[j] * u);
    } else {
      sum += spectrum_[j] * std::polar(1.0, kappa_[j] * u);
    }
  }
  return sum;
}

void BandLimited::shifted(double t, std::span<cplx> out) const {
  require(out.size() == grid_.n, "BandLimited::shifted: output length mismatch");
  std::vector<cplx> buf(padded_n_);
  const auto nyq = padded_n_ / 2;
  for (std::size_t j = 0; j < padded_n_; ++j) {
    buf[j] = spectrum_[j] * (j == nyq ? cplx(std::cos(kappa_[j] * t)) : std::polar(1.0, kappa_[j] * t));
  }
  fft::backward(buf);
  const auto lead = grid_.n / 2;
  for (std::size_t i = 0; i < grid_.n; ++i) {
    out[i] = in_support(grid_.at(i) + t) ? buf[lead + i] : cplx{};
  }
}

std::vector<cplx> BandLimited::affine(std::span<const double> a, double gamma, const Grid1D& y,
                                      Exec exec) const {
  using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const auto rows = a.size();
  const auto cols = y.n;
  const auto nyq = padded_n_ / 2;

  // The Nyquist bin enters as a cosine, i.e. two half-weight exponentials.
  std::vector<double> kap;
  std::vector<cplx> coef;
  for (auto j : active_) {
    if (j == nyq) {
      kap.push_back(kappa_[j]);
      coef.push_back(0.5 * spectrum_[j]);
      kap.push_back(-kappa_[j]);
      coef.push_back(0.5 * spectrum_[j]);
    } else {
      kap.push_back(kappa_[j]);
      coef.push_back(spectrum_[j]);
    }
  }
  const auto depth = static_cast<Eigen::Index>(kap.size());

  Mat right(depth, static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < depth; ++j) {
    for (std::size_t k = 0; k < cols; ++k) {
      right(j, static_cast<Eigen::Index>(k)) = std::polar(1.0, kap[static_cast<std::size_t>(j)] * gamma * y.at(k));
    }
  }

  std::vector<cplx> result(rows * cols);
  constexpr std::size_t chunk = 8;
  const auto nchunks = static_cast<long long>((rows + chunk - 1) / chunk);
  RegionErrors errors;
#pragma omp parallel for if (exec == Exec::parallel) schedule(dynamic)
  for (long long c = 0; c < nchunks; ++c) {
    errors.run([&] {
      const auto r0 = static_cast<std::size_t>(c) * chunk;
      const auto r1 = std::min(rows, r0 + chunk);
      Mat left(static_cast<Eigen::Index>(r1 - r0), depth);
      for (std::size_t i = r0; i < r1; ++i) {
        const double u = a[i] - origin_;
        for (Eigen::Index j = 0; j < depth; ++j) {
          left(static_cast<Eigen::Index>(i - r0), j) =
              coef[static_cast<std::size_t>(j)] * std::polar(1.0, kap[static_cast<std::size_t>(j)] * u);
        }
      }
      Eigen::Map<Mat> out(result.data() + r0 * cols, static_cast<Eigen::Index>(r1 - r0),
                          static_cast<Eigen::Index>(cols));
      out.noalias() = left * right;
      for (std::size_t i = r0; i < r1; ++i) {
        for (std::size_t k = 0; k < cols; ++k) {
          if (!in_support(a[i] + gamma * y.at(k))) result[i * cols + k] = cplx{};
        }
      }
    });
  }
  errors.rethrow();
  return result;
}

}  // namespace phasespace
