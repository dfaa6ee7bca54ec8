// Serial reference kernels against their OpenMP counterparts.

#include "qdj/cgtwist.hpp"
#include "qdj/harness.hpp"
#include "qdj/kernels.hpp"
#include "qdj/lift.hpp"
#include "qdj/random.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace qdj;

void BM_MatmulSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const RealMatrix a = random_matrix(n, n, rng);
  const RealMatrix b = random_matrix(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::matmul_serial(a, b));
}

void BM_MatmulOmp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const RealMatrix a = random_matrix(n, n, rng);
  const RealMatrix b = random_matrix(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::matmul_omp(a, b));
}

void BM_TwistSweep(benchmark::State& state) {
  const auto exec = state.range(0) == 0 ? kernels::Execution::serial : kernels::Execution::parallel;
  for (auto _ : state) benchmark::DoNotOptimize(twist_sweep(4, QScalar(1, 2), exec));
}

void BM_AssociatorSweep(benchmark::State& state) {
  const auto exec = state.range(0) == 0 ? kernels::Execution::serial : kernels::Execution::parallel;
  for (auto _ : state) benchmark::DoNotOptimize(associator_sweep(2, QScalar(1, 2), exec));
}

void BM_LiftRoundTrip(benchmark::State& state) {
  Rng rng(2);
  const RoundTripCase c = make_round_trip({2, 3}, QScalar(1, 2), rng);
  for (auto _ : state) benchmark::DoNotOptimize(lift_action(c.action));
}

}  // namespace

BENCHMARK(BM_MatmulSerial)->Arg(16)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatmulOmp)->Arg(16)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwistSweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssociatorSweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LiftRoundTrip)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
