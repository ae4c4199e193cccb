#include <gtest/gtest.h>

#include "memclust/clustering.hpp"
#include "memclust/coarsening.hpp"
#include "support/oracle.hpp"

namespace memclust {
namespace {

TEST(Contract, SingletonsAreIdentity) {
  const Graph g = testing::to_graph(testing::triangle());
  const CoarseningLevel level = contract(g, Clustering::singletons(3));
  EXPECT_EQ(level.coarse.num_nodes(), 3u);
  EXPECT_EQ(level.coarse.num_edges(), 3u);
  EXPECT_EQ(level.coarse.total_weight(), 3);
  for (NodeID v = 0; v < 3; ++v) EXPECT_EQ(level.coarse.internal_weight(v), 0);
}

TEST(Contract, TriangleIntoOneVertex) {
  const Graph g = testing::to_graph(testing::triangle());
  const CoarseningLevel level = contract(g, Clustering::single_cluster(3));
  ASSERT_EQ(level.coarse.num_nodes(), 1u);
  EXPECT_EQ(level.coarse.internal_weight(0), 3);
  EXPECT_EQ(level.coarse.weighted_degree(0), 6);
  EXPECT_EQ(level.coarse.total_weight(), 3);
  EXPECT_EQ(level.coarse.vertex_weight(0), 3);
}

TEST(Contract, TwoTriangles) {
  const Graph g = testing::to_graph(testing::two_triangles());
  const CoarseningLevel level = contract(g, Clustering({0, 0, 0, 1, 1, 1}));
  ASSERT_EQ(level.coarse.num_nodes(), 2u);
  ASSERT_EQ(level.coarse.num_edges(), 1u);
  EXPECT_EQ(level.coarse.neighbors(0)[0], (Neighbor{1, 1}));
  EXPECT_EQ(level.coarse.internal_weight(0), 3);
  EXPECT_EQ(level.coarse.internal_weight(1), 3);

  const Clustering fine = project(level, Clustering::single_cluster(2));
  EXPECT_EQ(fine, Clustering::single_cluster(6));
  EXPECT_EQ(cut_edges(g, fine).size(), 0u);
}

TEST(Contract, SumsParallelEdges) {
  const std::vector<WeightedEdge> edges = {{0, 2, 2}, {1, 2, 3}, {0, 1, 4}};
  const Graph g = Graph::from_edges(3, edges);
  const CoarseningLevel level = contract(g, Clustering({0, 0, 1}));
  EXPECT_EQ(level.coarse.neighbors(0)[0], (Neighbor{1, 5}));
  EXPECT_EQ(level.coarse.internal_weight(0), 4);
}

TEST(Project, InvertsContraction) {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const NodeID n = rng.uniform_int<NodeID>(1, 12);
    const Graph g = testing::to_graph(testing::random_connected(n, 0.3, rng));
    const Clustering c(testing::random_labels(n, rng.uniform_int<ClusterID>(1, n), rng));
    const CoarseningLevel level = contract(g, c);
    EXPECT_TRUE(project(level, Clustering::singletons(level.coarse.num_nodes())).same_partition(c));
    EXPECT_TRUE(restrict_to_coarse(level, c).same_partition(
        Clustering::singletons(level.coarse.num_nodes())));
  }
}

TEST(Project, IdentityContraction) {
  const Graph g = testing::to_graph(testing::two_triangles());
  const CoarseningLevel level = contract(g, Clustering::singletons(6));
  const Clustering c({1, 1, 0, 0, 2, 2});
  EXPECT_TRUE(project(level, c).same_partition(c));
}

TEST(Project, RejectsMismatchedClustering) {
  const Graph g = testing::to_graph(testing::two_triangles());
  const CoarseningLevel level = contract(g, Clustering({0, 0, 0, 1, 1, 1}));
  EXPECT_THROW(project(level, Clustering::singletons(3)), Error);
  EXPECT_THROW(restrict_to_coarse(level, Clustering({0, 1, 0, 1, 1, 1})), Error);
}

TEST(Contract, InvariantsOnRandomGraphs) {
  Rng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    const NodeID n = rng.uniform_int<NodeID>(1, 12);
    const auto el = testing::random_connected(n, 0.3, rng, 4);
    const Graph g = testing::to_graph(el);
    if (g.total_weight() == 0) continue;
    const Clustering c(testing::random_labels(n, rng.uniform_int<ClusterID>(1, n), rng));
    const CoarseningLevel level = contract(g, c);
    const Graph& h = level.coarse;
    EXPECT_EQ(h.total_weight(), g.total_weight());
    EXPECT_EQ(h.total_vertex_weight(), g.total_vertex_weight());
    EdgeWeight dg = 0, dh = 0;
    for (NodeID v = 0; v < g.num_nodes(); ++v) dg += g.weighted_degree(v);
    for (NodeID v = 0; v < h.num_nodes(); ++v) dh += h.weighted_degree(v);
    EXPECT_EQ(dg, dh);
    const double fine = testing::naive_modularity(el, c.assignment());
    EXPECT_NEAR(modularity(h, Clustering::singletons(h.num_nodes())), fine, 1e-12);

    // A random coarse clustering scores the same on both levels.
    const Clustering coarse_c(testing::random_labels(
        h.num_nodes(), rng.uniform_int<ClusterID>(1, h.num_nodes()), rng));
    EXPECT_NEAR(modularity(h, coarse_c), modularity(g, project(level, coarse_c)), 1e-12);

    // Contracting twice keeps everything consistent.
    const CoarseningLevel second = contract(h, coarse_c);
    EXPECT_EQ(second.coarse.total_weight(), g.total_weight());
    EXPECT_NEAR(modularity(second.coarse, Clustering::singletons(second.coarse.num_nodes())),
                modularity(h, coarse_c), 1e-12);
  }
}

}  // namespace
}  // namespace memclust
