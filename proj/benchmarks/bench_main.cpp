#include <benchmark/benchmark.h>

#include <random>

#include "dsp6/chevalley.hpp"
#include "dsp6/heisenberg.hpp"
#include "dsp6/integrator.hpp"
#include "dsp6/lax.hpp"
#include "dsp6/reduction.hpp"
#include "dsp6/weyl.hpp"

namespace {

using namespace dsp6;

const PviParams kParams = PviParams::from_outer(0.3, 0.7, -0.4, 1.1);
const PviState kStart{3.0, 0.4, 0.9};

void BM_BracketExact(benchmark::State& state) {
  const auto& tb = tables<Rational>();
  const AlgebraElement a = tb.lambda_plus[0];
  const AlgebraElement b = tb.lambda_minus[1];
  for (auto _ : state) benchmark::DoNotOptimize(bracket(a, b));
}
BENCHMARK(BM_BracketExact);

void BM_BracketDouble(benchmark::State& state) {
  const auto& tb = tables<double>();
  const NumericElement a = tb.lambda_plus[0] * 0.7 + tb.f[2] * 1.3;
  const NumericElement b = tb.lambda_plus[1] * -0.4 + tb.e[2] * 2.1;
  for (auto _ : state) benchmark::DoNotOptimize(bracket(a, b));
}
BENCHMARK(BM_BracketDouble);

void BM_VerifyChevalley(benchmark::State& state) {
  const ChevalleyBasis& cb = chevalley();
  for (auto _ : state) benchmark::DoNotOptimize(verify_chevalley(cb));
}
BENCHMARK(BM_VerifyChevalley)->Unit(benchmark::kMillisecond);

void BM_CentralizerComponent(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(centralizer_component(k));
}
BENCHMARK(BM_CentralizerComponent)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SolveCoefficientsDouble(benchmark::State& state) {
  const auto m = m_from_lambda_mu(0.4, 0.9, kParams.outer(), 3.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_coefficients(m));
}
BENCHMARK(BM_SolveCoefficientsDouble);

void BM_RhsSymmetric(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rhs_symmetric(kStart, kParams));
}
BENCHMARK(BM_RhsSymmetric);

void BM_Integrate(benchmark::State& state) {
  const double t_end = kStart.t + static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(integrate(kStart, kParams, t_end));
}
BENCHMARK(BM_Integrate)->Arg(5)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_CompatibilityResidual(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(compatibility_residual(kStart, kParams));
}
BENCHMARK(BM_CompatibilityResidual)->Unit(benchmark::kMicrosecond);

void BM_ApplyWord(benchmark::State& state) {
  const WeylWord w{0, 2, 1, 2, 3, 4};
  for (auto _ : state) benchmark::DoNotOptimize(apply_word(w, kStart, kParams));
}
BENCHMARK(BM_ApplyWord);

}  // namespace
BENCHMARK_MAIN();
