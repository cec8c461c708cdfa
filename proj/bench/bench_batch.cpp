// Serial against OpenMP trial batches on two representative workloads.
#include <benchmark/benchmark.h>

#include "acihs/batch.hpp"
#include "acihs/confocal.hpp"
#include "acihs/mumford.hpp"
#include "acihs/rng.hpp"
#include "acihs/sampling.hpp"

namespace {

using namespace acihs;

double geodesic_trial(std::size_t k) {
  const confocal::ConfocalFamily fam({1.0, 2.0, 4.0});
  Rng rng(7, k);
  const auto s0 = sampling::ellipsoid_state(rng, fam);
  const auto traj = confocal::geodesic_flow(s0.x, s0.v, fam, 1e-3, 2000, 1e-3, 2000);
  return traj.max_drift;
}

double mumford_trial(std::size_t k) {
  Rng rng(11, k);
  const auto model = sampling::hyperelliptic(rng, 4);
  const auto pts = sampling::divisor(rng, model);
  return mumford::verify_pell(mumford::triple_from_divisor(pts, model), model);
}

template <double (*Trial)(std::size_t)>
void serial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(batch::run_serial(n, Trial));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <double (*Trial)(std::size_t)>
void parallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(batch::run_parallel(n, Trial, threads));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(serial<geodesic_trial>)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(parallel<geodesic_trial>)->Args({32, 1})->Args({32, 2})->Args({32, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(serial<mumford_trial>)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(parallel<mumford_trial>)->Args({256, 1})->Args({256, 2})->Args({256, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
