#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "pointint/dirac.hpp"
#include "pointint/parity.hpp"
#include "pointint/regularization.hpp"
#include "pointint/schrodinger.hpp"

using namespace pointint;
namespace reg = pointint::regularization;

namespace {

void BM_Scatter(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<LambdaParams> pool;
  for (int i = 0; i < 1024; ++i) pool.push_back(parity::random_lambda(rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(schrodinger::scatter(pool[i++ & 1023], 1.0, Side::Left));
  }
}
BENCHMARK(BM_Scatter);

void BM_UnitaryToLambda(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::vector<UnitaryParams> pool;
  for (int i = 0; i < 1024; ++i) pool.push_back(parity::random_unitary(rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(unitary_to_interaction(pool[i++ & 1023]));
}
BENCHMARK(BM_UnitaryToLambda);

void BM_DiracScatter(benchmark::State& state) {
  const dirac::DiracParams p = dirac::mixed_interaction(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(dirac::dirac_scatter(p, 2.0, 1.0, Side::Left));
}
BENCHMARK(BM_DiracScatter);

void BM_OddSearch(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(parity::odd_search(static_cast<std::uint64_t>(state.range(0)), 42));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OddSearch)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_OdeTransfer(benchmark::State& state) {
  const auto potential = reg::gaussian_delta(1e-3, -2.0);
  for (auto _ : state) benchmark::DoNotOptimize(reg::ode_transfer(potential, 1.0));
  state.counters["samples"] = static_cast<double>(potential.size());
}
BENCHMARK(BM_OdeTransfer)->Unit(benchmark::kMicrosecond);

void BM_LimitAnalysis(benchmark::State& state) {
  const auto sequence = reg::named_sequence("seba", 1.0, 2.0);
  const auto eps = reg::default_eps_schedule();
  const auto k = reg::default_k_grid();
  for (auto _ : state) benchmark::DoNotOptimize(reg::limit_analysis(sequence, eps, k));
}
BENCHMARK(BM_LimitAnalysis)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
