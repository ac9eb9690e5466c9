#include "phasespace/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "phasespace/error.hpp"

namespace phasespace::fft {
namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    // Planning needs a scratch buffer; FFTW_ESTIMATE leaves its contents alone.
    auto* buf = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void run(std::span<cplx> data, int sign) {
  require(is_power_of_two(data.size()), "fft: length must be a power of two");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(cache().get(data.size(), sign), p, p);
}

}  // namespace

void forward(std::span<cplx> data) { run(data, FFTW_FORWARD); }
void backward(std::span<cplx> data) { run(data, FFTW_BACKWARD); }

double wavenumber(std::size_t j, std::size_t n, double step) {
  const auto half = n / 2;
  const double idx = j < half ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
  return 2.0 * 3.14159265358979323846 * idx / (static_cast<double>(n) * step);
}

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace phasespace::fft
