#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "phasespace/exec.hpp"
#include "phasespace/kernels.hpp"
#include "phasespace/reference.hpp"
#include "phasespace/solutions.hpp"

using namespace phasespace;

namespace {

// best of `reps` wall-clock runs, milliseconds
double time_ms(const std::function<void()>& f, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, std::size_t n, double serial, double parallel, double reference) {
  std::printf("%-22s %5zu %12.3f %12.3f %12.3f %9.2f\n", name, n, serial, parallel, reference, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_limit_from_env();
  std::vector<std::size_t> sizes{64, 128};
  if (argc > 1) {
    sizes.clear();
    for (int i = 1; i < argc; ++i) sizes.push_back(std::strtoul(argv[i], nullptr, 10));
  }
  const OscillatorUnits u(1.0, 1.0, 1.0);
  std::printf("threads %d\n", max_threads());
  std::printf("%-22s %5s %12s %12s %12s %9s\n", "case", "n", "serial ms", "parallel ms", "reference ms", "speedup");
  for (auto n : sizes) {
    const auto g = make_phase_grid(n, 8.0, 1.0);
    const auto phi = hermite_eigenstate(2, u, g.q);
    const int reps = n <= 64 ? 5 : 3;

    row("psi_s_pure s=0.5", n, time_ms([&] { psi_s_pure(phi, 0.5, g, Exec::serial); }, reps),
        time_ms([&] { psi_s_pure(phi, 0.5, g, Exec::parallel); }, reps),
        time_ms([&] { reference::psi_s_pure(phi, 0.5, g); }, 1));

    const auto gs = wigner_conjugate_g(phi, -0.5, g);
    const KernelSpec sk{SFamilyKernel{gs, -0.5}, {}, {}};
    row("solve_s_family s=-0.5", n, time_ms([&] { solve_s_family(phi, gs, -0.5, g, Exec::serial); }, reps),
        time_ms([&] { solve_s_family(phi, gs, -0.5, g, Exec::parallel); }, reps),
        time_ms([&] { reference::kernel_transform(sk, phi, g); }, 1));

    const KernelSpec cs{CoherentStateKernel{u}, {}, {}};
    row("kernel_transform cs", n, time_ms([&] { kernel_transform(cs, phi, g, Exec::serial); }, reps),
        time_ms([&] { kernel_transform(cs, phi, g, Exec::parallel); }, reps),
        time_ms([&] { reference::kernel_transform(cs, phi, g); }, 1));
  }
  return 0;
}
