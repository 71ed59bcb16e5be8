#include <benchmark/benchmark.h>

#include "archdpg/arch.hpp"
#include "archdpg/assembly.hpp"
#include "archdpg/expression.hpp"
#include "archdpg/fem.hpp"
#include "archdpg/mesh.hpp"
#include "archdpg/oracle.hpp"
#include "archdpg/solver.hpp"

namespace {

using namespace archdpg;

ArchConfig clamped_arch() {
  ArchConfig c;
  c.params = ArchParameters(1e-3, 0.0, 3.0);
  c.bc = BcPair::parse("cc");
  c.load.f_u = Expr::cos(1.0, 1.0);
  c.load.f_w = Expr::sin(1.0, 1.0);
  return c;
}

ArchConfig cantilever_arch() {
  ArchConfig c;
  c.params = ArchParameters(1e-4, 1.0, 6.0);
  c.bc = BcPair::parse("fc");
  c.load.add_point_load(0.0, Component::W, 1.0);
  return c;
}

void BM_ElementSystem(benchmark::State& state) {
  const ArchConfig config = clamped_arch();
  const auto disc = DiscretizationConfig::scaled_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const ElementSystem es = element_system(config.params, config.load, disc, 0.25, 0.5);
    benchmark::DoNotOptimize(condense(es));
  }
}
BENCHMARK(BM_ElementSystem)->DenseRange(1, 4);

void BM_DpgSolve(benchmark::State& state) {
  const ArchConfig config = clamped_arch();
  const Mesh mesh = Mesh::uniform(static_cast<int>(state.range(0)));
  const auto disc = DiscretizationConfig::scaled_graph(3);
  for (auto _ : state) benchmark::DoNotOptimize(solve(config, mesh, disc));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DpgSolve)->RangeMultiplier(4)->Range(8, 512)->Complexity(benchmark::oN)->Unit(benchmark::kMillisecond);

void BM_DpgSolveThreads(benchmark::State& state) {
  const ArchConfig config = clamped_arch();
  const Mesh mesh = Mesh::uniform(512);
  const auto disc = DiscretizationConfig::scaled_graph(3);
  const SolveOptions options{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(solve(config, mesh, disc, options));
}
BENCHMARK(BM_DpgSolveThreads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Oracle(benchmark::State& state) {
  const ArchConfig config = clamped_arch();
  OracleOptions options;
  options.elements = static_cast<int>(state.range(0));
  options.richardson_check = false;
  for (auto _ : state) benchmark::DoNotOptimize(solve_reference(config, options));
}
BENCHMARK(BM_Oracle)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Fem(benchmark::State& state) {
  const ArchConfig config = cantilever_arch();
  const Mesh mesh = Mesh::uniform(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fem_solve(config, mesh, true));
}
BENCHMARK(BM_Fem)->RangeMultiplier(8)->Range(8, 4096);

}  // namespace

BENCHMARK_MAIN();
