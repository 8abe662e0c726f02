#include <benchmark/benchmark.h>

#include "primepot/eigensolver.hpp"
#include "primepot/hologram.hpp"
#include "primepot/scattering.hpp"
#include "primepot/semiclassical.hpp"
#include "primepot/sequences.hpp"
#include "primepot/susy.hpp"

namespace {

using namespace primepot;

void BM_SievePrimes(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sieve_primes(state.range(0)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SievePrimes)->RangeMultiplier(10)->Range(1000, 10'000'000)->Complexity();

void BM_SieveLucky(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sieve_lucky(state.range(0)));
}
BENCHMARK(BM_SieveLucky)->RangeMultiplier(10)->Range(1000, 1'000'000);

void BM_RiemannR(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(counting_estimates(1e6, 25));
}
BENCHMARK(BM_RiemannR);

void BM_DesignPrimes(benchmark::State& state) {
  Grid grid = Grid::with_spacing(12, 0.005);
  auto levels = first_primes(static_cast<std::size_t>(state.range(0))).as_levels();
  for (auto _ : state)
    benchmark::DoNotOptimize(design_potential(levels, grid, KineticScale::half()));
}
BENCHMARK(BM_DesignPrimes)->Arg(5)->Arg(10)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_SolveBoundStates(benchmark::State& state) {
  Grid grid = Grid::with_spacing(12, 0.012 / static_cast<double>(state.range(0)));
  auto v = design_potential(first_primes(10).as_levels(), grid, KineticScale::half());
  for (auto _ : state) benchmark::DoNotOptimize(bound_states(v, KineticScale::half()));
  state.counters["points"] = static_cast<double>(grid.points());
}
BENCHMARK(BM_SolveBoundStates)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_TransmissionScan(benchmark::State& state) {
  Grid grid = Grid::with_spacing(12, 0.005);
  auto v = design_potential(first_lucky(10).as_levels(), grid, KineticScale::half());
  auto tr = truncate_potential(v, 30.0);
  std::vector<double> energies;
  for (int i = 0; i < state.range(0); ++i) energies.push_back(0.5 + 29.0 * i / state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(transmission_scan(tr.potential, energies, KineticScale::half()));
}
BENCHMARK(BM_TransmissionScan)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_FilterQuery(benchmark::State& state) {
  LuckyPrimeFilter filter;
  std::int64_t w = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(filter.test(w));
    w = w % 30 + 1;
  }
}
BENCHMARK(BM_FilterQuery)->Unit(benchmark::kMillisecond);

void BM_SemiclassicalInversion(benchmark::State& state) {
  auto dos = [](double e) { return prime_density_of_states(e); };
  for (auto _ : state) benchmark::DoNotOptimize(invert_to_potential(dos, 2.0, 100.0, 400));
}
BENCHMARK(BM_SemiclassicalInversion)->Unit(benchmark::kMillisecond);

void BM_HologramCostGradient(benchmark::State& state) {
  auto m = static_cast<std::size_t>(state.range(0));
  auto s = make_hologram_state(m, std::vector<double>(m / 2, 1.0), 9, 1);
  auto illum = uniform_illumination(m);
  for (auto _ : state) benchmark::DoNotOptimize(cost_and_gradient(s, illum));
}
BENCHMARK(BM_HologramCostGradient)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_HologramOptimize(benchmark::State& state) {
  Grid grid = Grid::with_spacing(12, 0.01);
  auto v = design_potential(first_primes(10).as_levels(), grid, KineticScale::half());
  auto target = potential_to_target(v, 100);
  auto s = make_hologram_state(64, target.amplitude, 9, 1);
  auto illum = uniform_illumination(64);
  for (auto _ : state)
    benchmark::DoNotOptimize(optimize_phase(s, illum, {.max_iters = static_cast<std::size_t>(state.range(0))}));
}
BENCHMARK(BM_HologramOptimize)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
