// Serial reference kernels against their OpenMP counterparts, plus the
// approximate repulsion solvers at the same sizes.
#include <benchmark/benchmark.h>

#include <cmath>
#include <numeric>

#include "tfdp/distances.hpp"
#include "tfdp/generators.hpp"
#include "tfdp/init.hpp"
#include "tfdp/metrics.hpp"
#include "tfdp/repulsion.hpp"

namespace {

using namespace tfdp;

Layout square_layout(std::size_t n) {
  return init_random(random_tree(n, 7), 11, std::sqrt(static_cast<double>(n)));
}

void BM_RepulsionExactSerial(benchmark::State& state) {
  const Layout layout = square_layout(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::repulsion_exact_serial(layout, ForceParams{}));
}

void BM_RepulsionExact(benchmark::State& state) {
  const Layout layout = square_layout(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(repulsion_exact(layout, ForceParams{}));
}

void BM_RepulsionBarnesHut(benchmark::State& state) {
  const Layout layout = square_layout(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(repulsion_bh(layout, ForceParams{}, {}, 0.5));
}

void BM_RepulsionIbfft(benchmark::State& state) {
  const Layout layout = square_layout(state.range(0));
  const GridPolicy policy{.k = static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(repulsion_ibfft(layout, ForceParams{}, policy));
}

void BM_CrossingsSerial(benchmark::State& state) {
  const Graph g = preferential_attachment(state.range(0), 2, 3);
  const Layout layout = init_random(g, 5, 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(reference::count_crossings_serial(g, layout));
}

void BM_Crossings(benchmark::State& state) {
  const Graph g = preferential_attachment(state.range(0), 2, 3);
  const Layout layout = init_random(g, 5, 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(count_crossings(g, layout));
}

std::vector<NodeId> every_node(const Graph& g) {
  std::vector<NodeId> s(g.node_count());
  std::iota(s.begin(), s.end(), NodeId{0});
  return s;
}

void BM_BfsSerial(benchmark::State& state) {
  const Graph g = grid_graph(state.range(0), state.range(0));
  const auto sources = every_node(g);
  for (auto _ : state) benchmark::DoNotOptimize(reference::bfs_distances_serial(g, sources));
}

void BM_Bfs(benchmark::State& state) {
  const Graph g = grid_graph(state.range(0), state.range(0));
  const auto sources = every_node(g);
  for (auto _ : state) benchmark::DoNotOptimize(bfs_distances(g, sources));
}

}  // namespace

BENCHMARK(BM_RepulsionExactSerial)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RepulsionExact)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RepulsionBarnesHut)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RepulsionIbfft)->Args({1000, 1})->Args({4000, 1})->Args({4000, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossingsSerial)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Crossings)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BfsSerial)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Bfs)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
