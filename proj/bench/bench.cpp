// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include <vector>

#include "qait/complexity.hpp"
#include "qait/information.hpp"
#include "qait/rng.hpp"
#include "qait/table_store.hpp"

using namespace qait;

namespace {

const EnumerationTable& table_for(int budget, int n) {
  static std::map<int, std::unique_ptr<TableStore>> stores;
  auto& s = stores[budget];
  if (!s) s = std::make_unique<TableStore>(MachineBudget{budget, 64});
  return s->for_qubits(n);
}

void BM_enumerate(benchmark::State& state) {
  const MachineBudget b{static_cast<int>(state.range(0)), 64};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate("10", b));
}

void BM_enumerate_reference(benchmark::State& state) {
  const MachineBudget b{static_cast<int>(state.range(0)), 64};
  for (auto _ : state) benchmark::DoNotOptimize(reference::enumerate("10", b));
}

void BM_build_mu(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const EnumerationTable& t = table_for(9, n);
  for (auto _ : state) benchmark::DoNotOptimize(build_mu(n, t));
}

void BM_build_mu_reference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const EnumerationTable& t = table_for(9, n);
  for (auto _ : state) benchmark::DoNotOptimize(reference::build_mu(n, t));
}

void BM_build_cd(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const EnumerationTable& t = table_for(9, n);
  const SemiDensityMatrix mu = build_mu(n, t);
  for (auto _ : state) benchmark::DoNotOptimize(build_cd(mu, t));
}

void BM_build_cd_reference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const EnumerationTable& t = table_for(9, n);
  const SemiDensityMatrix mu = build_mu(n, t);
  for (auto _ : state) benchmark::DoNotOptimize(reference::build_cd(mu, t));
}

std::pair<Matrix, std::vector<double>> random_columns(Eigen::Index dim, Eigen::Index count) {
  Rng rng(11);
  Matrix vs(dim, count);
  std::vector<double> w;
  for (Eigen::Index j = 0; j < count; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) vs(i, j) = Complex(rng.normal(), rng.normal());
    w.push_back(rng.uniform());
  }
  return {vs, w};
}

void BM_weighted_outer_sum(benchmark::State& state) {
  const auto [vs, w] = random_columns(state.range(0), 512);
  for (auto _ : state) benchmark::DoNotOptimize(weighted_outer_sum(vs, w));
}

void BM_weighted_outer_sum_reference(benchmark::State& state) {
  const auto [vs, w] = random_columns(state.range(0), 512);
  for (auto _ : state) benchmark::DoNotOptimize(reference::weighted_outer_sum(vs, w));
}

}  // namespace

BENCHMARK(BM_enumerate)->DenseRange(6, 8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_reference)->DenseRange(6, 8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_build_mu)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_build_mu_reference)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_build_cd)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_build_cd_reference)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_weighted_outer_sum)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_weighted_outer_sum_reference)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
