#include "phasespace/exec.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace phasespace {

void apply_thread_limit_from_env() {
  const char* env = std::getenv("PHASESPACE_THREADS");
  if (env == nullptr) return;
  try {
    int cap = std::stoi(env);
    if (cap > 0 && cap < omp_get_max_threads()) omp_set_num_threads(cap);
  } catch (const std::exception&) {
    // unparsable value: leave the OpenMP default in place
  }
}

int max_threads() { return omp_get_max_threads(); }

void RegionErrors::capture(std::exception_ptr e) noexcept {
#pragma omp critical(phasespace_region_errors)
  {
    if (!first_) first_ = std::move(e);
  }
}

}  // namespace phasespace
