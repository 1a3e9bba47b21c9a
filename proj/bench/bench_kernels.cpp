// Serial reference vs OpenMP kernels. Run with --benchmark_filter to pick one;
// OMP_NUM_THREADS controls the parallel variants.
#include <benchmark/benchmark.h>

#include <vector>

#include "bh/constants.hpp"
#include "bh/kernels.hpp"
#include "bh/verifier.hpp"

namespace {

namespace k = bh::kernels;
const bh::FamilySpec kSpec{bh::Family::RecursiveReal, bh::KhinchineMode::GammaFormula};

template <void (*Sweep)(const bh::FamilySpec&, std::span<double>)>
void BM_Sweep(benchmark::State& state) {
  std::vector<double> logs(static_cast<std::size_t>(state.range(0)) + 1);
  for (auto _ : state) {
    Sweep(kSpec, logs);
    benchmark::DoNotOptimize(logs.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK_TEMPLATE(BM_Sweep, k::serial::sweep)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_Sweep, k::omp::sweep)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

const std::vector<double>& tail_logs() {
  static const std::vector<double> logs = [] {
    std::vector<double> v((1 << 20) + 2);
    k::omp::sweep(kSpec, v);
    return v;
  }();
  return logs;
}

template <bh::kernels::RatioExtremes (*Scan)(std::span<const double>, std::int64_t, std::int64_t)>
void BM_TailScan(benchmark::State& state) {
  const auto& logs = tail_logs();
  for (auto _ : state) benchmark::DoNotOptimize(Scan(logs, 2, 1 << 20));
  state.SetItemsProcessed(state.iterations() * (1 << 20));
}
BENCHMARK_TEMPLATE(BM_TailScan, k::serial::ratio_extremes)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_TailScan, k::omp::ratio_extremes)->Unit(benchmark::kMillisecond);

template <bh::kernels::VertexMax (*Sup)(int, int, std::span<const double>)>
void BM_VertexSup(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  const auto coeffs =
      bh::random_form(m, n, bh::ScalarField::Real, 1, bh::Distribution::Gaussian).real_coeffs();
  for (auto _ : state) benchmark::DoNotOptimize(Sup(m, n, coeffs));
}
BENCHMARK_TEMPLATE(BM_VertexSup, k::serial::sup_real_vertices)->Args({3, 4})->Args({3, 8})->Args({4, 6})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_VertexSup, k::omp::sup_real_vertices)->Args({3, 4})->Args({3, 8})->Args({4, 6})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
