#pragma once

#include <exception>
#include <utility>

namespace phasespace {

// Execution policy for the row/shift-parallel kernels. `parallel` enables
// the OpenMP loops; `serial` runs the identical code on one thread.
enum class Exec { serial, parallel };

// Applies PHASESPACE_THREADS (if set) as an upper bound on OpenMP threads.
void apply_thread_limit_from_env();

int max_threads();

// Exceptions may not cross an OpenMP region boundary. Wrap the loop body in
// run(); the first exception thrown by any thread is rethrown by rethrow()
// once the region has ended.
class RegionErrors {
 public:
  template <class F>
  void run(F&& body) noexcept {
    try {
      std::forward<F>(body)();
    } catch (...) {
      capture(std::current_exception());
    }
  }
  void rethrow() const {
    if (first_) std::rethrow_exception(first_);
  }

 private:
  void capture(std::exception_ptr e) noexcept;
  std::exception_ptr first_;
};

}  // namespace phasespace
