#include <benchmark/benchmark.h>

#include "common.hpp"

using namespace bench;

static void BM_PolyhedronBuild2D(benchmark::State& state) {
  const auto f = fig3();
  for (auto _ : state) benchmark::DoNotOptimize(NewtonPolyhedron::build(f));
}
BENCHMARK(BM_PolyhedronBuild2D);

static void BM_PolyhedronBuild3D(benchmark::State& state) {
  const auto f = cubic_3d();
  for (auto _ : state) benchmark::DoNotOptimize(NewtonPolyhedron::build(f));
}
BENCHMARK(BM_PolyhedronBuild3D);

static void BM_Floor(benchmark::State& state) {
  const auto n = NewtonPolyhedron::build(cubic_3d());
  const RationalVector x{Rational(1), Rational(2), Rational(3)};
  for (auto _ : state) benchmark::DoNotOptimize(n.floor(std::span<const Rational>(x)));
}
BENCHMARK(BM_Floor);

static void BM_Nondegeneracy(benchmark::State& state) {
  const auto f = fig2();
  for (auto _ : state) benchmark::DoNotOptimize(check_nondegenerate(f));
}
BENCHMARK(BM_Nondegeneracy)->Unit(benchmark::kMillisecond);

static void BM_Ladder(benchmark::State& state) {
  const auto n = NewtonPolyhedron::build(fig3());
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exponent_ladder(n, Rational(2), n_max, true));
}
BENCHMARK(BM_Ladder)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_ConstantsReport(benchmark::State& state) {
  const auto f = sum_squares();
  const auto n = NewtonPolyhedron::build(f);
  for (auto _ : state) benchmark::DoNotOptimize(constants_report(f, n, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ConstantsReport)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
