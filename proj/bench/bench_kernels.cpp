// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <sstream>

#include "tbregman/cli.hpp"
#include "tbregman/kernels.hpp"
#include "tbregman/quadrature.hpp"
#include "tbregman/transport1d.hpp"

namespace {

using tbregman::Execution;

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_TransportKl(benchmark::State& state) {
  const auto p = tbregman::gaussian1d(0.3, 4.0), q = tbregman::gaussian1d(0.0, 1.0);
  tbregman::QuadratureConfig cfg;
  cfg.nodes = static_cast<int>(state.range(1));
  // Build the cached rule outside the timed loop.
  benchmark::DoNotOptimize(tbregman::transport_kl_1d(p, q, cfg, Execution::serial));
  for (auto _ : state) benchmark::DoNotOptimize(tbregman::transport_kl_1d(p, q, cfg, exec_of(state)));
}
BENCHMARK(BM_TransportKl)->ArgNames({"parallel", "nodes"})->ArgsProduct({{0, 1}, {512, 2048, 8192}});

void BM_InteractionEnergy(benchmark::State& state) {
  const auto p = tbregman::gaussian1d(0.0, 4.0), q = tbregman::gaussian1d(0.0, 1.0);
  const auto w = tbregman::log_distance_kernel();
  tbregman::QuadratureConfig cfg;
  cfg.interaction_nodes = static_cast<int>(state.range(1));
  benchmark::DoNotOptimize(tbregman::interaction_energy_divergence(w, p, q, cfg, Execution::serial));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        tbregman::interaction_energy_divergence(w, p, q, cfg, exec_of(state)));
  }
}
BENCHMARK(BM_InteractionEnergy)->ArgNames({"parallel", "nodes"})->ArgsProduct({{0, 1}, {128, 512}});

void BM_PairwiseSum(benchmark::State& state) {
  std::vector<double> v(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / static_cast<double>(i + 1);
  for (auto _ : state) benchmark::DoNotOptimize(tbregman::pairwise_sum(v));
}
BENCHMARK(BM_PairwiseSum)->Arg(1 << 12)->Arg(1 << 16);

void BM_GaussianSweep(benchmark::State& state) {
  tbregman::cli::SweepSpec spec;
  for (auto _ : state) {
    std::ostringstream out;
    tbregman::cli::write_sweep_csv(spec, out);
    benchmark::DoNotOptimize(out.str().size());
  }
}
BENCHMARK(BM_GaussianSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
