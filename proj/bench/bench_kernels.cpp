#include <benchmark/benchmark.h>

#include "isomlab/kernels.hpp"
#include "isomlab/matspace.hpp"

using namespace isomlab;

namespace {

NormSpec bench_spec(int which) { return which == 0 ? NormSpec::schatten(3.0) : NormSpec::schatten(1.0); }

void BM_ConstraintParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const NormSpec spec = bench_spec(static_cast<int>(state.range(1)));
  const int d = n * n - 1;
  for (auto _ : state) benchmark::DoNotOptimize(kernels::constraint_matrix(spec, n, 3 * d * d, 1));
  state.SetItemsProcessed(state.iterations() * 3 * d * d);
}

void BM_ConstraintReference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const NormSpec spec = bench_spec(static_cast<int>(state.range(1)));
  const int d = n * n - 1;
  for (auto _ : state) benchmark::DoNotOptimize(kernels::constraint_matrix_reference(spec, n, 3 * d * d, 1));
  state.SetItemsProcessed(state.iterations() * 3 * d * d);
}

void BM_OrbitParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CMatrix a = random_hermitian_traceless(n, 1).matrix();
  const CMatrix c = random_hermitian_traceless(n, 2).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::orbit_trace_values(a, c, 20000, 3));
  state.SetItemsProcessed(state.iterations() * 20000);
}

void BM_OrbitReference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CMatrix a = random_hermitian_traceless(n, 1).matrix();
  const CMatrix c = random_hermitian_traceless(n, 2).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::orbit_trace_values_reference(a, c, 20000, 3));
  state.SetItemsProcessed(state.iterations() * 20000);
}

}  // namespace

BENCHMARK(BM_ConstraintParallel)->ArgsProduct({{3, 4, 5}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConstraintReference)->ArgsProduct({{3, 4, 5}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrbitParallel)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrbitReference)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
