#include <benchmark/benchmark.h>

#include <random>

#include "uset/analytics.hpp"
#include "uset/construct.hpp"
#include "uset/factorials.hpp"
#include "uset/lattice.hpp"
#include "uset/search.hpp"
#include "uset/universal.hpp"
#include "uset/walk.hpp"

using namespace uset;

namespace {

const Field QI = Field::quadratic(-1);

void BM_FactorialIdeal(benchmark::State& st) {
  const auto n = static_cast<std::uint64_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(factorial_ideal(QI, n));
}
BENCHMARK(BM_FactorialIdeal)->Arg(100)->Arg(1000)->Arg(10000);

void BM_Valuation(benchmark::State& st) {
  const auto P = primes_above(QI, 5)[0];
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> c(-1'000'000, 1'000'000);
  std::vector<QuadInt> xs;
  for (int i = 0; i < 256; ++i) xs.emplace_back(QI, c(rng) | 1, c(rng));
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(valuation(xs[i++ % xs.size()], P));
}
BENCHMARK(BM_Valuation);

void BM_CrtSolve(benchmark::State& st) {
  std::vector<Congruence> sys;
  int k = 0;
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul})
    for (const auto& P : primes_above(QI, p)) sys.push_back({QuadInt(QI, ++k, 1), P, 2});
  for (auto _ : st) benchmark::DoNotOptimize(crt_solve(sys));
}
BENCHMARK(BM_CrtSolve);

void BM_IsNUniversal(benchmark::State& st) {
  const auto t = build_universal(QI, static_cast<std::size_t>(st.range(0)));
  const auto& E = t.chain.back();
  for (auto _ : st) benchmark::DoNotOptimize(is_n_universal(E, E.size() - 2));
}
BENCHMARK(BM_IsNUniversal)->Arg(5)->Arg(15)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_BuildUniversal(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(build_universal(QI, static_cast<std::size_t>(st.range(0))));
}
BENCHMARK(BM_BuildUniversal)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_SearchOptimal(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(search_optimal(QI, n, {7, 7, ""}));
}
BENCHMARK(BM_SearchOptimal)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_GammaEstimate(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(gamma_estimate_value(QI, static_cast<std::uint64_t>(st.range(0))));
}
BENCHMARK(BM_GammaEstimate)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_LogPotential(benchmark::State& st) {
  const std::vector<Box> U = {{{0.0, 0.0}, {1.0, 1.0}}};
  for (auto _ : st) benchmark::DoNotOptimize(log_potential_integral(U, 2, 1'000'000, 1));
}
BENCHMARK(BM_LogPotential)->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& st) {
  WalkConfig c;
  c.field = QI;
  c.n = 2;
  c.L = 8;
  c.M = static_cast<std::uint64_t>(st.range(0));
  c.trials = 200;
  c = validated(c);
  for (auto _ : st) benchmark::DoNotOptimize(simulate(c));
}
BENCHMARK(BM_Simulate)->Arg(25)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_FourierBound(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(fourier_bound(31, 64));
}
BENCHMARK(BM_FourierBound);

}  // namespace

BENCHMARK_MAIN();
