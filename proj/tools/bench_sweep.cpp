// Benchmark: OpenMP sweep against the serial reference, checking that the
// catalogues agree exactly.

#include <chrono>
#include <cstdio>

#include "pnlv/polefield.hpp"

using namespace pnlv;

namespace {
double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}
}  // namespace

int main(int argc, char** argv) {
  double r1 = argc > 1 ? std::atof(argv[1]) : 14.0;
  const auto wh = LinearizedSolution::weber_hermite(2.0, RootBranch::Plus, 1.0, 1.0);
  const auto accessor = make_accessor(wh);
  RegionSpec region{3.0, r1, 0.0, 2.0 * M_PI};
  SweepStrategy strategy;
  strategy.tol = 1e-9;

  std::printf("sweep region: annulus %.1f..%.1f, full circle\n", region.r0, region.r1);

  auto t0 = std::chrono::steady_clock::now();
  const auto serial = sweep_serial(wh.equation(), accessor, region, strategy);
  const double tSerial = seconds_since(t0);
  std::printf("serial:   %7.2f s  (%zu poles, %zu zeros)\n", tSerial, serial.poles.size(),
              serial.zeros.size());

  t0 = std::chrono::steady_clock::now();
  const auto parallel = sweep(wh.equation(), accessor, region, strategy);
  const double tParallel = seconds_since(t0);
  std::printf("parallel: %7.2f s  (%zu poles, %zu zeros)  speedup x%.2f\n", tParallel,
              parallel.poles.size(), parallel.zeros.size(), tSerial / tParallel);

  bool identical = serial.poles.size() == parallel.poles.size() &&
                   serial.zeros.size() == parallel.zeros.size();
  if (identical) {
    for (size_t i = 0; i < serial.poles.size(); ++i) {
      if (serial.poles[i].seed.p != parallel.poles[i].seed.p ||
          serial.poles[i].seed.h != parallel.poles[i].seed.h) {
        identical = false;
        break;
      }
    }
  }
  std::printf("catalogues %s\n", identical ? "identical" : "DIFFER");
  return identical ? 0 : 1;
}
