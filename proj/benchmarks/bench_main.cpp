#include <benchmark/benchmark.h>

#include <cmath>

#include "eplab/gas.hpp"
#include "eplab/poisson.hpp"
#include "eplab/scenario.hpp"
#include "eplab/solver.hpp"
#include "eplab/threshold.hpp"

namespace {

eplab::FlowField make_bump(std::size_t n) {
  eplab::Grid1D grid(-20.0, 20.0, n);
  std::vector<double> rho(n), u(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.center(i);
    rho[i] = 0.02 + std::exp(-0.5 * x * x);
  }
  return {grid, std::move(rho), std::move(u), 0.0};
}

void BM_SolverStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const eplab::GasModel model(0.5, 1.4, 0.5);
  eplab::SolverConfig cfg;
  eplab::FlowField f = make_bump(n);
  for (auto _ : state) {
    f = eplab::step(f, cfg, model);
    benchmark::DoNotOptimize(f.rho.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_SolverStep)->Arg(1024)->Arg(4096)->Arg(16384);

void BM_PoissonField(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const eplab::FlowField f = make_bump(n);
  eplab::PoissonConfig cfg;
  cfg.tol_support = 1.0;
  for (auto _ : state) {
    auto pf = eplab::field_from_density(f, cfg);
    benchmark::DoNotOptimize(pf.phi_x.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_PoissonField)->Arg(4096)->Arg(65536);

void BM_ToRiemann(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const eplab::GasModel model(1.0, 2.0, 1.0);
  const eplab::FlowField f = make_bump(n);
  for (auto _ : state) {
    auto rf = eplab::to_riemann(f, model);
    benchmark::DoNotOptimize(rf.X.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_ToRiemann)->Arg(4096)->Arg(65536);

void BM_Classify(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const eplab::GasModel model(1.0, 2.0, 1.0);
  const eplab::FlowField f = make_bump(n);
  for (auto _ : state) {
    auto rep = eplab::classify(f, model);
    benchmark::DoNotOptimize(rep.K0);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_Classify)->Arg(4096)->Arg(65536);

}  // namespace

BENCHMARK_MAIN();
