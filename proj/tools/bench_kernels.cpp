// Timing harness for the OpenMP kernels against their serial references:
// the distance-transform build and the factor-graph linearization.

#include <chrono>
#include <cstdio>
#include <memory>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mazeplan/factor_graph.hpp"
#include "mazeplan/rng.hpp"
#include "mazeplan/sdf.hpp"

using namespace mazeplan;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

OccupancyGrid random_grid(int size, double fill, std::uint64_t seed) {
  OccupancyGrid g(size, size, 1.0);
  SplitMix64 rng(seed);
  for (int iy = 1; iy < size - 1; ++iy)
    for (int ix = 1; ix < size - 1; ++ix)
      if (rng.next_double() < fill) g.set_occupied(ix, iy, true);
  return g;
}

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const double ms = ms_since(t0);
    if (ms < best) best = ms;
  }
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif

  {
    const int size = 1200;
    const OccupancyGrid grid = random_grid(size, 0.02, 42);
    double checksum_serial = 0.0, checksum_parallel = 0.0;
    const double serial_ms = time_best_of(3, [&] {
      checksum_serial = build_sdf_serial(grid).values().front();
    });
    const double parallel_ms = time_best_of(3, [&] {
      checksum_parallel = build_sdf(grid).values().front();
    });
    std::printf("sdf %dx%d       serial %8.2f ms   omp %8.2f ms   speedup %.2fx   match %s\n", size, size,
                serial_ms, parallel_ms, serial_ms / parallel_ms,
                checksum_serial == checksum_parallel ? "yes" : "NO");
  }

  {
    const int n = 20000;
    const OccupancyGrid grid = random_grid(256, 0.05, 7);
    const SignedDistanceField sdf = build_sdf(grid);
    const ObstacleModel model{8.0, 0.5};

    FactorGraph graph;
    SplitMix64 rng(11);
    graph.states.resize(n);
    for (auto& s : graph.states)
      s = {{rng.next_in(5.0, 250.0), rng.next_in(5.0, 250.0)}, {rng.next_in(-2, 2), rng.next_in(-2, 2)}};
    graph.add(std::make_unique<AnchorFactor>(0, graph.states.front(), 1e6));
    graph.add(std::make_unique<AnchorFactor>(n - 1, graph.states.back(), 1e6));
    for (int i = 1; i < n - 1; ++i) graph.add(std::make_unique<ObstacleFactor>(i, &sdf, model));
    for (int i = 0; i < n - 1; ++i) graph.add(std::make_unique<GpPriorFactor>(i, 0.5, 1.0));

    BlockTridiag serial_system, parallel_system;
    LinearizeScratch scratch;
    const double serial_ms = time_best_of(5, [&] { linearize_serial(graph, serial_system); });
    const double parallel_ms = time_best_of(5, [&] { linearize(graph, parallel_system, &scratch); });
    const bool match = serial_system.gradient == parallel_system.gradient &&
                       serial_system.diag == parallel_system.diag &&
                       serial_system.upper == parallel_system.upper;
    std::printf("linearize n=%d  serial %8.2f ms   omp %8.2f ms   speedup %.2fx   match %s\n", n, serial_ms,
                parallel_ms, serial_ms / parallel_ms, match ? "yes" : "NO");
  }
  return 0;
}
