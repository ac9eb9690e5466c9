#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace phasespace::fft {

using cplx = std::complex<double>;

// Unnormalized in-place transforms.
//   forward:  X_j = sum_k x_k exp(-2 pi i jk/n)
//   backward: x_k = sum_j X_j exp(+2 pi i jk/n)
// Safe to call concurrently from several threads.
void forward(std::span<cplx> data);
void backward(std::span<cplx> data);

// Angular wavenumbers of DFT bin j for spacing `step`, in FFT order
// (0, 1, ..., n/2-1, -n/2, ..., -1) * 2 pi / (n step).
double wavenumber(std::size_t j, std::size_t n, double step);

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n);

}  // namespace phasespace::fft
