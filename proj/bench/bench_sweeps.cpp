// Times each sweep's serial reference against its OpenMP kernel.

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "purikit/sweeps.hpp"

using namespace purikit;

namespace {

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, const std::function<void()>& serial,
         const std::function<void()>& parallel) {
  const double ts = best_of(3, serial);
  const double tp = best_of(3, parallel);
  std::printf("%-32s serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n",
              name, ts, tp, ts / tp);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif

  FamilyEtas etas;
  etas.a = 0.4;
  etas.b = 0.1;
  row("region_scan grid 96",
      [&] { region_scan_serial(Family::dephasing1, etas, 96); },
      [&] { region_scan(Family::dephasing1, etas, 96, true); });

  row("prediction_agreement n=10000",
      [] { prediction_agreement_sweep_serial(10000, 1, 1e-6, 200, 1e-6); },
      [] { prediction_agreement_sweep(10000, 1, 1e-6, 200, 1e-6, true); });

  row("oracle_check trials=400",
      [] { oracle_check_serial(400, 1, 1e-10); },
      [] { oracle_check(400, 1, 1e-10, true); });

  return 0;
}
