// Parallel kernels vs their serial reference implementations.

#include <benchmark/benchmark.h>

#include "subman/kernel_estimate.hpp"
#include "subman/measure.hpp"
#include "subman/quadrature.hpp"
#include "subman/rng.hpp"

namespace {

using namespace subman;

std::vector<double> random_phases(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& s : out) s = rng.uniform01();
  return out;
}

void bm_kernel_matrix_parallel(benchmark::State& state) {
  const auto phases = random_phases(static_cast<std::size_t>(state.range(0)), 7);
  const auto centers = random_phases(256, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_matrix(phases, centers, 25.0, Metric::kChordal));
  }
}
BENCHMARK(bm_kernel_matrix_parallel)->Arg(1024)->Arg(8192);

void bm_kernel_matrix_serial(benchmark::State& state) {
  const auto phases = random_phases(static_cast<std::size_t>(state.range(0)), 7);
  const auto centers = random_phases(256, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reference::kernel_matrix(phases, centers, 25.0, Metric::kChordal));
  }
}
BENCHMARK(bm_kernel_matrix_serial)->Arg(1024)->Arg(8192);

double wiggly(double s) { return std::sin(6.283185307179586 * 3.0 * s) + s * s; }

void bm_integrate_parallel(benchmark::State& state) {
  const Measure mu = Measure::von_mises(0.25, 2.0);
  const Quadrature quad = Quadrature::midpoint(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(wiggly, mu, quad));
  }
}
BENCHMARK(bm_integrate_parallel)->Arg(1 << 14)->Arg(1 << 18);

void bm_integrate_serial(benchmark::State& state) {
  const Measure mu = Measure::von_mises(0.25, 2.0);
  const Quadrature quad = Quadrature::midpoint(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::integrate(wiggly, mu, quad));
  }
}
BENCHMARK(bm_integrate_serial)->Arg(1 << 14)->Arg(1 << 18);

}  // namespace

BENCHMARK_MAIN();
