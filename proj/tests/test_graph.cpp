#include <gtest/gtest.h>

#include <numeric>

#include "memclust/graph.hpp"
#include "support/oracle.hpp"

namespace memclust {
namespace {

using testing::two_triangles;

TEST(Graph, FromEdgesComputesDegreesAndTotals) {
  const Graph g = testing::to_graph(two_triangles());
  EXPECT_EQ(g.num_nodes(), 6u);
  EXPECT_EQ(g.num_edges(), 7u);
  EXPECT_EQ(g.total_weight(), 7);
  EXPECT_EQ(g.total_vertex_weight(), 6);
  EXPECT_EQ(g.weighted_degree(2), 3);
  EXPECT_EQ(g.weighted_degree(0), 2);
  EdgeWeight sum = 0;
  for (NodeID v = 0; v < g.num_nodes(); ++v) sum += g.weighted_degree(v);
  EXPECT_EQ(sum, 2 * g.total_weight());
}

TEST(Graph, NeighborListsAreSorted) {
  const std::vector<WeightedEdge> edges = {{0, 3, 2}, {0, 1, 1}, {0, 2, 5}};
  const Graph g = Graph::from_edges(4, edges);
  const auto nb = g.neighbors(0);
  ASSERT_EQ(nb.size(), 3u);
  EXPECT_EQ(nb[0], (Neighbor{1, 1}));
  EXPECT_EQ(nb[1], (Neighbor{2, 5}));
  EXPECT_EQ(nb[2], (Neighbor{3, 2}));
  EXPECT_EQ(g.weighted_degree(0), 8);
}

TEST(Graph, InternalWeightCountsTwiceInDegree) {
  const Graph g({0, 1, 2}, {{1, 4}, {0, 4}}, {3, 0}, {2, 1});
  EXPECT_EQ(g.total_weight(), 7);
  EXPECT_EQ(g.weighted_degree(0), 10);
  EXPECT_EQ(g.weighted_degree(1), 4);
  EXPECT_EQ(g.total_vertex_weight(), 3);
}

TEST(Graph, RejectsSelfLoops) {
  const std::vector<WeightedEdge> edges = {{1, 1}};
  EXPECT_THROW(Graph::from_edges(2, edges), Error);
}

TEST(Graph, RejectsDuplicateEdges) {
  const std::vector<WeightedEdge> edges = {{0, 1}, {1, 0}};
  EXPECT_THROW(Graph::from_edges(2, edges), Error);
}

TEST(Graph, RejectsOutOfRangeEndpoints) {
  const std::vector<WeightedEdge> edges = {{0, 2}};
  EXPECT_THROW(Graph::from_edges(2, edges), Error);
}

TEST(Graph, RejectsAsymmetricAdjacency) {
  EXPECT_THROW(Graph({0, 1, 1}, {{1, 1}}, {0, 0}, {1, 1}), Error);
  EXPECT_THROW(Graph({0, 1, 2}, {{1, 1}, {0, 2}}, {0, 0}, {1, 1}), Error);
}

TEST(Graph, RejectsBadWeights) {
  EXPECT_THROW(Graph({0, 1, 2}, {{1, -1}, {0, -1}}, {0, 0}, {1, 1}), Error);
  EXPECT_THROW(Graph({0, 1, 2}, {{1, 1}, {0, 1}}, {0, 0}, {1, 0}), Error);
  EXPECT_THROW(Graph({0, 1, 2}, {{1, 1}, {0, 1}}, {-1, 0}, {1, 1}), Error);
}

TEST(Graph, RejectsInconsistentOffsets) {
  EXPECT_THROW(Graph({0, 2, 1}, {{1, 1}, {0, 1}}, {0, 0}, {1, 1}), Error);
  EXPECT_THROW(Graph({0, 1}, {{1, 1}, {0, 1}}, {0, 0}, {1, 1}), Error);
}

TEST(Graph, EmptyGraph) {
  const Graph g = Graph::from_edges(3, {});
  EXPECT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.num_edges(), 0u);
  EXPECT_EQ(g.total_weight(), 0);
}

TEST(Graph, InducedSubgraphKeepsInsideEdges) {
  const Graph g = testing::to_graph(two_triangles());
  const std::vector<NodeID> nodes = {3, 2, 4};
  const Graph sub = induced_subgraph(g, nodes);
  EXPECT_EQ(sub.num_nodes(), 3u);
  EXPECT_EQ(sub.num_edges(), 2u);  // 3-2 and 3-4
  EXPECT_EQ(sub.weighted_degree(0), 2);
  EXPECT_EQ(sub.weighted_degree(1), 1);
  EXPECT_EQ(sub.weighted_degree(2), 1);
}

}  // namespace
}  // namespace memclust
