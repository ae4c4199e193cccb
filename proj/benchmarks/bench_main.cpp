#include <benchmark/benchmark.h>

#include <vector>

#include "memclust/coarsening.hpp"
#include "memclust/louvain.hpp"
#include "memclust/memetic.hpp"
#include "memclust/partition.hpp"

namespace {

using namespace memclust;

// Planted partition: blocks of 32 vertices, dense inside, sparse between.
Graph planted(NodeID n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<WeightedEdge> edges;
  constexpr NodeID kBlock = 32;
  for (NodeID u = 0; u < n; ++u) {
    for (int i = 0; i < 6; ++i) {
      const bool inside = rng.bernoulli(0.85);
      NodeID v = inside ? (u / kBlock) * kBlock + rng.uniform_int<NodeID>(0, kBlock - 1)
                        : rng.uniform_int<NodeID>(0, n - 1);
      v = std::min(v, n - 1);
      if (u != v) edges.push_back({std::min(u, v), std::max(u, v), 1});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const WeightedEdge& a, const WeightedEdge& b) {
                            return a.u == b.u && a.v == b.v;
                          }),
              edges.end());
  return Graph::from_edges(n, edges);
}

void BM_Louvain(benchmark::State& state) {
  const Graph g = planted(static_cast<NodeID>(state.range(0)), 1);
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(louvain_multilevel(g, {}, rng));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}
BENCHMARK(BM_Louvain)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);

void BM_Sclp(benchmark::State& state) {
  const Graph g = planted(static_cast<NodeID>(state.range(0)), 1);
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(sclp(g, g.num_nodes() / 10, 10, rng));
}
BENCHMARK(BM_Sclp)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);

void BM_Contract(benchmark::State& state) {
  const Graph g = planted(static_cast<NodeID>(state.range(0)), 1);
  std::vector<ClusterID> labels(g.num_nodes());
  for (NodeID v = 0; v < g.num_nodes(); ++v) labels[v] = v / 32;
  const Clustering c(labels);
  for (auto _ : state) benchmark::DoNotOptimize(contract(g, c));
}
BENCHMARK(BM_Contract)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMicrosecond);

void BM_Modularity(benchmark::State& state) {
  const Graph g = planted(static_cast<NodeID>(state.range(0)), 1);
  Rng rng(4);
  const Clustering c = louvain_multilevel(g, {}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(modularity(g, c));
}
BENCHMARK(BM_Modularity)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMicrosecond);

void BM_Partition(benchmark::State& state) {
  const Graph g = planted(1 << 14, 1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(partition(g, {static_cast<ClusterID>(state.range(0)), 0.03, seed++}));
  }
}
BENCHMARK(BM_Partition)->Arg(2)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_MultilevelRecombine(benchmark::State& state) {
  const Graph g = planted(static_cast<NodeID>(state.range(0)), 1);
  Rng rng(5);
  const Individual a = create_individual(g, {}, rng);
  const Individual b = create_individual(g, {}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(multilevel_recombine(g, a, b, rng));
}
BENCHMARK(BM_MultilevelRecombine)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
