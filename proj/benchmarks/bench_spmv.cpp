#include <benchmark/benchmark.h>

#include <random>

#include "csr5/format.hpp"
#include "csr5/spmv.hpp"
#include "csr5/synthetic.hpp"

using namespace csr5;

namespace {

DenseVector make_x(index_t n) {
  std::mt19937_64 rng(1);
  DenseVector x(static_cast<std::size_t>(n));
  for (double& v : x) v = 0.5 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return x;
}

CsrMatrix matrix_for(const benchmark::State& state) {
  const auto nnz = static_cast<index_t>(state.range(0));
  const bool skewed = state.range(1) != 0;
  const index_t m = std::max<index_t>(nnz / 50, 1);
  const index_t n = std::max<index_t>(8 * nnz / m, 64);
  return generate_synthetic(skewed ? SyntheticKind::one_long_row : SyntheticKind::regular, m, n,
                            nnz, 7);
}

void set_counters(benchmark::State& state, index_t nnz) {
  state.counters["GFlop/s"] = benchmark::Counter(2.0 * static_cast<double>(nnz),
                                                 benchmark::Counter::kIsIterationInvariantRate,
                                                 benchmark::Counter::kIs1000);
}

void BM_csr_scalar(benchmark::State& state) {
  const CsrMatrix a = matrix_for(state);
  const DenseVector x = make_x(a.n);
  DenseVector y(static_cast<std::size_t>(a.m));
  for (auto _ : state) {
    spmv_csr_scalar(a, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  set_counters(state, a.nnz());
}

void BM_csr_segsum(benchmark::State& state) {
  const CsrMatrix a = matrix_for(state);
  const DenseVector x = make_x(a.n);
  DenseVector y(static_cast<std::size_t>(a.m));
  for (auto _ : state) {
    spmv_csr_segsum(a, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  set_counters(state, a.nnz());
}

void BM_csr5_deterministic(benchmark::State& state) {
  const CsrMatrix a = matrix_for(state);
  const Csr5Matrix a5 = csr_to_csr5(a, TuningParams{});
  const DenseVector x = make_x(a.n);
  DenseVector y(static_cast<std::size_t>(a.m));
  for (auto _ : state) {
    spmv_csr5(a5, x, y, SpmvMode::deterministic);
    benchmark::DoNotOptimize(y.data());
  }
  set_counters(state, a.nnz());
}

void BM_csr5_atomic(benchmark::State& state) {
  const CsrMatrix a = matrix_for(state);
  const Csr5Matrix a5 = csr_to_csr5(a, TuningParams{});
  const DenseVector x = make_x(a.n);
  DenseVector y(static_cast<std::size_t>(a.m));
  for (auto _ : state) {
    spmv_csr5(a5, x, y, SpmvMode::atomic);
    benchmark::DoNotOptimize(y.data());
  }
  set_counters(state, a.nnz());
}

void BM_convert(benchmark::State& state) {
  const CsrMatrix a = matrix_for(state);
  for (auto _ : state) {
    Csr5Matrix a5 = csr_to_csr5(a, TuningParams{});
    benchmark::DoNotOptimize(a5.val.data());
  }
  set_counters(state, a.nnz());
}

void shapes(benchmark::internal::Benchmark* b) {
  for (int skewed : {0, 1})
    for (int nnz : {1 << 16, 1 << 20}) b->Args({nnz, skewed});
}

}  // namespace

BENCHMARK(BM_csr_scalar)->Apply(shapes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_csr_segsum)->Apply(shapes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_csr5_deterministic)->Apply(shapes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_csr5_atomic)->Apply(shapes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_convert)->Apply(shapes)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
