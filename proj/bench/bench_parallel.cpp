#include <benchmark/benchmark.h>

#include "abcover/catalog.hpp"
#include "abcover/search.hpp"

using namespace abcover;

namespace {

const CurvePool& pool() {
  static const CurvePool p = parse_pool(*embedded_file("pools/y2_d14.toml"), "y2_d14");
  return p;
}

SearchOptions search_options() {
  SearchOptions o;
  o.targets = parse_targets("pg=3,q=0,d=14");
  return o;
}

std::vector<DivClass> sweep_classes(int k) {
  std::vector<DivClass> out;
  for (int d = 0; d <= 8; ++d)
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b) {
        std::vector<int> m(static_cast<std::size_t>(k), 1);
        m[0] = a;
        m[1] = b;
        out.emplace_back(k, d, std::span<const int>(m));
      }
  return out;
}

void BM_SearchParallel(benchmark::State& state) {
  const auto options = search_options();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate(pool().ctx, pool().curves, options));
}

void BM_SearchSerial(benchmark::State& state) {
  const auto options = search_options();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_serial(pool().ctx, pool().curves, options));
}

void BM_OracleSweepParallel(benchmark::State& state) {
  const SurfaceContext ctx(4);
  const auto classes = sweep_classes(4);
  const std::vector<std::uint64_t> seeds{1, 2};
  for (auto _ : state) benchmark::DoNotOptimize(h0_oracle_sweep(ctx, classes, seeds));
}

void BM_OracleSweepSerial(benchmark::State& state) {
  const SurfaceContext ctx(4);
  const auto classes = sweep_classes(4);
  const std::vector<std::uint64_t> seeds{1, 2};
  for (auto _ : state) benchmark::DoNotOptimize(h0_oracle_sweep_serial(ctx, classes, seeds));
}

}  // namespace

BENCHMARK(BM_SearchParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSweepSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
