// Serial reference vs OpenMP kernels. Arg(0) is serial, Arg(w) uses w workers.

#include <benchmark/benchmark.h>

#include <cmath>

#include "hdrc/core_dmt.hpp"
#include "hdrc/kernels.hpp"

namespace {

using namespace hdrc;

kernels::TwoVarGrid two_var_grid() {
  const AntennaConfig c(2, 2, 2);
  const double r = 1.0;
  const Interval a = region_R(c, r);
  return {c, r, a, static_cast<int>(std::ceil(a.width() / 1e-3)), 1000};
}

void BM_TwoVarScan(benchmark::State& state) {
  const auto g = two_var_grid();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto cell = workers == 0 ? kernels::two_var_scan_serial(g) : kernels::two_var_scan_parallel(g, workers);
    benchmark::DoNotOptimize(cell);
  }
}
BENCHMARK(BM_TwoVarScan)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_OracleScan(benchmark::State& state) {
  const AntennaConfig c(2, 1, 2);
  const int levels = 20;
  const kernels::OracleGrid g{c, 1.0, levels, kernels::sorted_tuples(c.u(), levels),
                              kernels::sorted_tuples(c.p(), levels), kernels::sorted_tuples(c.q(), levels)};
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto cell = workers == 0 ? kernels::oracle_scan_serial(g) : kernels::oracle_scan_parallel(g, workers);
    benchmark::DoNotOptimize(cell);
  }
}
BENCHMARK(BM_OracleScan)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_OutageCount(benchmark::State& state) {
  const kernels::OutageJob job{AntennaConfig(1, 1, 1), 7, 100'000, {1e2, 1e3}, {0.5 * std::log2(1e2), 0.5 * std::log2(1e3)}};
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto counts = workers == 0 ? kernels::outage_count_serial(job) : kernels::outage_count_parallel(job, workers);
    benchmark::DoNotOptimize(counts);
  }
}
BENCHMARK(BM_OutageCount)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
