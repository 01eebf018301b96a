#include <benchmark/benchmark.h>

#include "ave/analysis.hpp"
#include "ave/generators.hpp"
#include "ave/solvers.hpp"

namespace {

ave::GeneratedInstance desk_instance(int n) {
  return ave::gen_example1(n, /*alpha=*/0, /*seed=*/42);
}

void BM_project_C2(benchmark::State& state) {
  const auto inst = desk_instance(static_cast<int>(state.range(0)));
  const ave::SplitSpace space(inst.problem);
  const ave::SplitPoint w = space.particular();
  for (auto _ : state)
    benchmark::DoNotOptimize(ave::project_C2(w, ave::TieRule::PreferU));
}
BENCHMARK(BM_project_C2)->Arg(200);

void BM_project_C1(benchmark::State& state) {
  const auto inst = desk_instance(static_cast<int>(state.range(0)));
  const ave::SplitSpace space(inst.problem);
  const ave::SplitPoint w = ave::to_split(inst.x_star);
  for (auto _ : state)
    benchmark::DoNotOptimize(ave::project_C1(space, w));
}
BENCHMARK(BM_project_C1)->Arg(200);

void BM_map_step(benchmark::State& state) {
  const auto inst = desk_instance(static_cast<int>(state.range(0)));
  const ave::SplitSpace space(inst.problem);
  const ave::SplitPoint w = space.particular();
  for (auto _ : state)
    benchmark::DoNotOptimize(ave::map_step(space, w, ave::TieRule::PreferU));
}
BENCHMARK(BM_map_step)->Arg(200);

void BM_ls_step(benchmark::State& state) {
  const auto inst = desk_instance(static_cast<int>(state.range(0)));
  const ave::SplitSpace space(inst.problem);
  const ave::LBlocks blocks = ave::compute_L_blocks(space);
  const ave::SplitPoint w = ave::to_split(inst.x_star);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        ave::ls_step(space, blocks, w, ave::TieRule::PreferU));
}
BENCHMARK(BM_ls_step)->Arg(200);

void BM_solve_map(benchmark::State& state) {
  const auto inst = desk_instance(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(ave::solve_map(inst.problem));
}
BENCHMARK(BM_solve_map)->Arg(50)->Arg(200);

void BM_minor_enumeration(benchmark::State& state) {
  const auto inst = desk_instance(static_cast<int>(state.range(0)));
  const auto Q = ave::compute_Q(inst.problem);
  for (auto _ : state)
    benchmark::DoNotOptimize(ave::is_p_matrix(*Q, 12));
}
BENCHMARK(BM_minor_enumeration)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
