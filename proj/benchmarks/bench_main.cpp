#include <benchmark/benchmark.h>

#include <cmath>

#include "caft/estimators.hpp"
#include "caft/oracle.hpp"
#include "caft/scm.hpp"

namespace {

caft::ScmConfig gamma_bhn() {
  caft::ScmConfig c;
  c.frailty = caft::FrailtyLaw::gamma(1.0);
  c.effect = caft::EffectLaw::bhn_law(0.05, 0.5, 0.18, 3.53);
  c.censoring.exponential_mean = 100.0;
  return c;
}

void BM_Generate(benchmark::State& state) {
  const auto c = gamma_bhn();
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(caft::generate(c, n, seed++));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Generate)->Arg(500)->Arg(100000);

void BM_KaplanMeier(benchmark::State& state) {
  const auto data = caft::generate(gamma_bhn(), static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(caft::kaplan_meier(data, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KaplanMeier)->Arg(500)->Arg(100000);

void BM_CoxFit(benchmark::State& state) {
  const auto data = caft::generate(gamma_bhn(), static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(caft::cox_fit(data));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CoxFit)->Arg(500)->Arg(100000);

void BM_ObservedTheta(benchmark::State& state) {
  const auto data = caft::generate(gamma_bhn(), 100000, 4);
  const auto s0 = caft::kaplan_meier(data, 0);
  const auto s1 = caft::kaplan_meier(data, 1);
  const auto grid = caft::default_grid(s1);
  for (auto _ : state) benchmark::DoNotOptimize(caft::observed_theta(s0, s1, grid));
}
BENCHMARK(BM_ObservedTheta);

void BM_OracleTheta(benchmark::State& state) {
  auto c = gamma_bhn();
  if (state.range(0) == 1) c.effect = caft::EffectLaw::gamma(1.442, 1.0);
  const auto levels = std::vector<double>{0.05, 0.25, 0.5, 0.75, 0.95};
  const auto times = caft::times_at_treated_cdf(caft::survival_treated(c), levels);
  for (auto _ : state) benchmark::DoNotOptimize(caft::causal_theta(c, times));
}
BENCHMARK(BM_OracleTheta)->Arg(0)->Arg(1)->ArgName("gamma_effect");

void BM_MomentContrasts(benchmark::State& state) {
  const auto c = gamma_bhn();
  for (auto _ : state) benchmark::DoNotOptimize(caft::moment_contrasts(c));
}
BENCHMARK(BM_MomentContrasts);

}  // namespace
BENCHMARK_MAIN();
