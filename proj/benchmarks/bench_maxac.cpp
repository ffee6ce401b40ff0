#include <benchmark/benchmark.h>

#include <maxac/maxac.hpp>

namespace {

using namespace maxac;

MixtureData default_pair() {
  MixtureSpec s;
  s.seed = 1000;
  return generate_pair(s);
}

void BM_CostTriple(benchmark::State& state) {
  const MixtureData d = default_pair();
  const Decomposition full = full_svd(d.first);
  const Decomposition svd1 = truncate(full, 4);
  const auto set = sample_gaussian(svd1.u, 0.1 * delta_scale(d.second, full),
                                   static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cost_triple(set, d.first, d.second, svd1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CostTriple)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_MaximizeBeta(benchmark::State& state) {
  const MixtureData d = default_pair();
  const Decomposition full = full_svd(d.first);
  const Decomposition svd1 = truncate(full, 4);
  const auto set = sample_gaussian(svd1.u, 0.1 * delta_scale(d.second, full),
                                   static_cast<std::size_t>(state.range(0)), 1);
  const CostTriple costs = cost_triple(set, d.first, d.second, svd1);
  const double sq = (d.first.values() - d.second.values()).squaredNorm();
  BetaSearchConfig cfg;
  cfg.grid = default_beta_grid(2.0 * 200 * 20 * 4 / sq);
  for (auto _ : state) {
    benchmark::DoNotOptimize(maximize_beta(costs, 200, cfg));
  }
}
BENCHMARK(BM_MaximizeBeta)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_SelectRank(benchmark::State& state) {
  const MixtureData d = default_pair();
  SweepConfig cfg;
  cfg.k_max = 7;
  cfg.m_base = 256;
  cfg.m_cap = 4096;
  cfg.method = static_cast<Method>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_rank(d.first, d.second, cfg));
  }
}
BENCHMARK(BM_SelectRank)
    ->Arg(static_cast<int>(Method::numeric_gaussian))
    ->Arg(static_cast<int>(Method::analytic_unconstrained))
    ->Arg(static_cast<int>(Method::analytic_bounded))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
