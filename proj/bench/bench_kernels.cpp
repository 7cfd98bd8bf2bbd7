// Parallel kernels against their serial counterparts in tml::reference.
#include <benchmark/benchmark.h>

#include "tml/dyck.hpp"
#include "tml/reference.hpp"
#include "tml/spectral.hpp"
#include "tml/symmetric_eigen.hpp"

namespace {

const tml::EntryDistribution& skew12() {
  static const auto d = tml::named_distribution("skew12");
  return d;
}

void BM_Sample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tml::sample_symmetric_matrix(skew12(), n, 1));
}
BENCHMARK(BM_Sample)->Arg(256)->Arg(1024);

void BM_SampleReference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tml::reference::sample_symmetric_matrix(skew12(), n, 1));
}
BENCHMARK(BM_SampleReference)->Arg(256)->Arg(1024);

void BM_TracePower(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = tml::sample_symmetric_matrix(skew12(), n, 2).normalized_entries();
  for (auto _ : state) benchmark::DoNotOptimize(tml::trace_power(a, n, 4, tml::TraceRoute::MatrixPower));
}
BENCHMARK(BM_TracePower)->Arg(64)->Arg(192);

void BM_TracePowerReference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = tml::sample_symmetric_matrix(skew12(), n, 2).normalized_entries();
  for (auto _ : state) benchmark::DoNotOptimize(tml::reference::trace_power(a, n, 4));
}
BENCHMARK(BM_TracePowerReference)->Arg(64)->Arg(192);

void BM_MonteCarloTrace(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tml::mc_expected_trace(skew12(), 32, 3, 200, 3));
}
BENCHMARK(BM_MonteCarloTrace);

void BM_MonteCarloTraceReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tml::reference::mc_expected_trace(skew12(), 32, 3, 200, 3));
}
BENCHMARK(BM_MonteCarloTraceReference);

void BM_Eigenvalues(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = tml::sample_symmetric_matrix(skew12(), n, 4).normalized_entries();
  for (auto _ : state) benchmark::DoNotOptimize(tml::symmetric_eigenvalues(a, n));
}
BENCHMARK(BM_Eigenvalues)->Arg(64)->Arg(200);

void BM_EigenvaluesJacobi(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = tml::sample_symmetric_matrix(skew12(), n, 4).normalized_entries();
  for (auto _ : state) benchmark::DoNotOptimize(tml::reference::jacobi_eigenvalues(a, n));
}
BENCHMARK(BM_EigenvaluesJacobi)->Arg(64)->Arg(200);

void BM_LambdaMax(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tml::sample_lambda_max(skew12(), 100, 8, 5));
}
BENCHMARK(BM_LambdaMax);

void BM_LambdaMaxReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tml::reference::sample_lambda_max(skew12(), 100, 8, 5));
}
BENCHMARK(BM_LambdaMaxReference);

void BM_KFunctional(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(tml::expected_k_functional(128, 0, tml::ExpectationMode::MonteCarlo, 2000, 6));
}
BENCHMARK(BM_KFunctional);

void BM_KFunctionalReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tml::reference::expected_k_functional_mc(128, 2000, 6));
}
BENCHMARK(BM_KFunctionalReference);

}  // namespace

BENCHMARK_MAIN();
