#include <benchmark/benchmark.h>

#include <numbers>
#include <variant>

#include "hypcensus/geosolve.hpp"
#include "hypcensus/specfun.hpp"
#include "hypcensus/tetshape.hpp"
#include "hypcensus/tricomb.hpp"

using namespace hypcensus;

static void BM_Lobachevsky(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lobachevsky(x));
    x += 1e-6;
  }
}
BENCHMARK(BM_Lobachevsky);

static void BM_VolumeDilog(benchmark::State& state) {
  DihedralAngles ang;
  for (int i = 0; i < 6; ++i) ang[i] = std::numbers::pi / 6;
  for (auto _ : state) benchmark::DoNotOptimize(volume_dilog(ang));
}
BENCHMARK(BM_VolumeDilog);

static void BM_VolumeIntegral(benchmark::State& state) {
  DihedralAngles ang;
  for (int i = 0; i < 6; ++i) ang[i] = std::numbers::pi / 6;
  for (auto _ : state) benchmark::DoNotOptimize(volume_integral(ang));
}
BENCHMARK(BM_VolumeIntegral);

static void BM_Enumerate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FilterSet filters;
  for (auto _ : state) {
    int count = 0;
    enumerate_pairings(n, filters, [&](const Pairing&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_Enumerate)->Arg(1)->Arg(2);

static void BM_SolveFujii(benchmark::State& state) {
  FilterSet filters;
  Pairing fujii(0);
  for (const auto& p : enumerate_pairings(2, filters)) {
    const auto ecs = edge_classes(p);
    if (ecs.size() == 1 && ecs[0].valence() == 12) {
      fujii = p;
      break;
    }
  }
  const EquationSystem sys = build_equations(fujii, {});
  for (auto _ : state) {
    auto res = solve(sys);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_SolveFujii);

BENCHMARK_MAIN();
