#include <benchmark/benchmark.h>

#include <cmath>

#include "common.hpp"

using namespace bench;

static void BM_Integral1D(benchmark::State& state) {
  const auto f = make(1, {{{2}, 1}});
  const auto cutoff = CutoffSpec::bump(0.5);
  const Multidegree beta(std::vector<int>{0});
  const double lambda = std::pow(10.0, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_integral(f, cutoff, beta, lambda, 2));
}
BENCHMARK(BM_Integral1D)->DenseRange(2, 6, 2)->Unit(benchmark::kMicrosecond);

// Additively separable: product of line integrals.
static void BM_IntegralSeparable2D(benchmark::State& state) {
  const auto f = sum_squares();
  const auto cutoff = CutoffSpec::bump(0.5);
  const Multidegree beta(std::vector<int>{0, 0});
  const double lambda = std::pow(10.0, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_integral(f, cutoff, beta, lambda, 2));
}
BENCHMARK(BM_IntegralSeparable2D)->DenseRange(2, 4, 1)->Unit(benchmark::kMicrosecond);

static void BM_IntegralTensor2D(benchmark::State& state) {
  const auto f = fig3();
  const auto cutoff = CutoffSpec::bump(0.5);
  const Multidegree beta(std::vector<int>{0, 0});
  const double lambda = std::pow(10.0, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_integral(f, cutoff, beta, lambda, 2));
}
BENCHMARK(BM_IntegralTensor2D)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);
