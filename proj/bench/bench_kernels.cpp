// Serial reference vs OpenMP kernels. Arguments: {N, exec} with exec 0 serial, 1 parallel.
#include <vector>

#include <benchmark/benchmark.h>

#include "hpchain/average.hpp"
#include "hpchain/identities.hpp"
#include "hpchain/specfun.hpp"

using namespace hpchain;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(1) == 0 ? Exec::kSerial : Exec::kParallel; }

void BM_AveragedEcho(benchmark::State& state) {
  average::AverageParams p;
  p.a_modulus = 2.0;
  p.exec = exec_of(state);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(average::averaged_echo(n, p).value.ln_magnitude);
}
BENCHMARK(BM_AveragedEcho)->ArgsProduct({{8, 16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_NestedAverage(benchmark::State& state) {
  average::AverageParams p;
  p.exec = exec_of(state);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(average::nested_average(n, {1.0, 0.5}, p).value.ln_magnitude);
}
BENCHMARK(BM_NestedAverage)->ArgsProduct({{4, 8}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_MultiGaussian(benchmark::State& state) {
  average::AverageParams p;
  p.quad_rel_tol = 1e-6;
  p.exec = exec_of(state);
  const std::vector<double> widths{0.5, 0.3};
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(average::multi_gaussian_average(n, widths, p).value.ln_magnitude);
}
BENCHMARK(BM_MultiGaussian)->ArgsProduct({{2, 4}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_EigenvalueIntegral(benchmark::State& state) {
  const double c[] = {2.0};
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(identities::eigenvalue_integral(n, c, 0, exec_of(state)).trace_mean);
}
BENCHMARK(BM_EigenvalueIntegral)->ArgsProduct({{2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_GeneralizedBessel(benchmark::State& state) {
  const std::vector<double> c{5.0, 3.0, 1.0};
  const int nu_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(specfun::generalized_bessel_scaled_sequence(nu_max, c).back());
}
BENCHMARK(BM_GeneralizedBessel)->Arg(16)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
