#include <gtest/gtest.h>

#include "memclust/clustering.hpp"
#include "support/oracle.hpp"

namespace memclust {
namespace {

using testing::two_triangles;

const Clustering kTriangles({0, 0, 0, 1, 1, 1});

TEST(Clustering, ValidatesContiguousIds) {
  EXPECT_THROW(Clustering({0, 2}), Error);
  EXPECT_THROW(Clustering({1, 1}), Error);
  EXPECT_NO_THROW(Clustering({1, 0}));
  EXPECT_EQ(Clustering({1, 0, 1}).num_clusters(), 2u);
}

TEST(Clustering, NormalizesByFirstOccurrence) {
  const std::vector<ClusterID> labels = {5, 9, 5, 2};
  const Clustering c = Clustering::from_labels(labels);
  EXPECT_EQ(std::vector<ClusterID>(c.assignment().begin(), c.assignment().end()),
            (std::vector<ClusterID>{0, 1, 0, 2}));
  EXPECT_TRUE(Clustering({1, 0, 1, 2}).same_partition(c));
  EXPECT_FALSE(Clustering({1, 0, 1, 2}) == c);
}

TEST(Modularity, SingleClusterIsZero) {
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    const Graph g = testing::to_graph(testing::random_connected(9, 0.4, rng, 4));
    EXPECT_NEAR(modularity(g, Clustering::single_cluster(9)), 0.0, 1e-15);
  }
}

TEST(Modularity, KnownValues) {
  const Graph tri = testing::to_graph(testing::triangle());
  EXPECT_NEAR(modularity(tri, Clustering::singletons(3)), -1.0 / 3.0, 1e-15);
  const Graph tt = testing::to_graph(two_triangles());
  EXPECT_NEAR(modularity(tt, kTriangles), 5.0 / 14.0, 1e-15);
}

TEST(Modularity, ErrorsOnEdgelessGraphAndMismatch) {
  const Graph empty = Graph::from_edges(2, {});
  EXPECT_THROW(modularity(empty, Clustering::singletons(2)), Error);
  EXPECT_THROW(coverage(empty, Clustering::singletons(2)), Error);
  const Graph tt = testing::to_graph(two_triangles());
  EXPECT_THROW(modularity(tt, Clustering::singletons(5)), Error);
}

TEST(Modularity, MatchesNaiveEvaluator) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const NodeID n = rng.uniform_int<NodeID>(2, 9);
    const auto el = testing::random_connected(n, 0.35, rng, 5);
    const auto labels = testing::random_labels(n, rng.uniform_int<ClusterID>(1, n), rng);
    EXPECT_NEAR(modularity(testing::to_graph(el), Clustering(labels)),
                testing::naive_modularity(el, labels), 1e-12);
  }
}

TEST(Modularity, NeverExceedsOneMinusOneOverK) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const NodeID n = rng.uniform_int<NodeID>(2, 12);
    const Graph g = testing::to_graph(testing::random_connected(n, 0.3, rng, 3));
    const Clustering c(testing::random_labels(n, rng.uniform_int<ClusterID>(1, n), rng));
    const double k = c.num_clusters();
    EXPECT_LE(modularity(g, c), 1.0 - 1.0 / k + 1e-12);
    EXPECT_GE(modularity(g, c), -0.5 - 1e-12);
  }
}

TEST(Coverage, KnownValues) {
  const Graph tt = testing::to_graph(two_triangles());
  EXPECT_DOUBLE_EQ(coverage(tt, Clustering::single_cluster(6)), 1.0);
  EXPECT_DOUBLE_EQ(coverage(tt, Clustering::singletons(6)), 0.0);
  EXPECT_NEAR(coverage(tt, kTriangles), 6.0 / 7.0, 1e-15);
}

TEST(Overlay, PathExample) {
  const Graph g = testing::to_graph(testing::path(4));
  const Clustering c1({0, 0, 1, 1});
  const Clustering c2({0, 0, 0, 1});
  EXPECT_EQ(overlay(g, c1, c2), Clustering({0, 0, 1, 2}));
}

TEST(Overlay, IdenticalInputsGiveConnectedParts) {
  const Graph g = testing::to_graph(testing::path(4));
  const Clustering connected({0, 0, 1, 1});
  EXPECT_EQ(overlay(g, connected, connected), connected);
  // Cluster {0, 3} is not connected inside itself on the path.
  const Clustering split({0, 1, 1, 0});
  EXPECT_EQ(overlay(g, split, split), Clustering({0, 1, 1, 2}));
}

TEST(Overlay, WithSingletonsIsSingletons) {
  const Graph g = testing::to_graph(two_triangles());
  EXPECT_EQ(overlay(g, kTriangles, Clustering::singletons(6)), Clustering::singletons(6));
}

TEST(Overlay, RefinesBothInputs) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const NodeID n = rng.uniform_int<NodeID>(2, 14);
    const Graph g = testing::to_graph(testing::random_connected(n, 0.3, rng));
    const Clustering c1(testing::random_labels(n, rng.uniform_int<ClusterID>(1, n), rng));
    const Clustering c2(testing::random_labels(n, rng.uniform_int<ClusterID>(1, n), rng));
    const Clustering o = overlay(g, c1, c2);
    EXPECT_GE(o.num_clusters(), std::max(c1.num_clusters(), c2.num_clusters()));
    for (NodeID u = 0; u < n; ++u) {
      for (NodeID v = 0; v < n; ++v) {
        if (o[u] == o[v]) {
          EXPECT_EQ(c1[u], c1[v]);
          EXPECT_EQ(c2[u], c2[v]);
        }
      }
    }
    // Every overlay cluster is a subset of a label-intersection cluster.
    const Clustering lab = pairwise_label_overlay(c1, c2);
    for (NodeID u = 0; u < n; ++u) {
      for (NodeID v = 0; v < n; ++v) {
        if (o[u] == o[v]) EXPECT_EQ(lab[u], lab[v]);
      }
    }
    EXPECT_EQ(o, o.normalized());
  }
}

TEST(PairwiseLabelOverlay, Examples) {
  EXPECT_EQ(pairwise_label_overlay(Clustering({0, 0, 0, 0}), Clustering({0, 0, 1, 1})),
            Clustering({0, 0, 1, 1}));
  EXPECT_EQ(pairwise_label_overlay(Clustering({1, 0, 1}), Clustering({1, 0, 1})),
            Clustering({0, 1, 0}));
  EXPECT_EQ(pairwise_label_overlay(Clustering::singletons(4), Clustering({0, 0, 1, 1})),
            Clustering::singletons(4));
  EXPECT_THROW(pairwise_label_overlay(Clustering::singletons(3), Clustering::singletons(4)), Error);
}

TEST(PairwiseLabelOverlay, CommutativeAndIdempotent) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const NodeID n = rng.uniform_int<NodeID>(1, 20);
    const Clustering a(testing::random_labels(n, rng.uniform_int<ClusterID>(1, n), rng));
    const Clustering b(testing::random_labels(n, rng.uniform_int<ClusterID>(1, n), rng));
    EXPECT_TRUE(pairwise_label_overlay(a, b).same_partition(pairwise_label_overlay(b, a)));
    EXPECT_TRUE(pairwise_label_overlay(a, a).same_partition(a));
  }
}

TEST(CutEdges, Examples) {
  const Graph g = testing::to_graph(two_triangles());
  EXPECT_TRUE(cut_edges(g, Clustering::single_cluster(6)).empty());
  EXPECT_EQ(cut_edges(g, Clustering::singletons(6)).size(), 7u);
  const CutEdgeSet bridge = cut_edges(g, kTriangles);
  ASSERT_EQ(bridge.size(), 1u);
  EXPECT_TRUE(bridge.contains(3, 2));
  EXPECT_FALSE(bridge.contains(0, 1));
}

TEST(CutEdges, SortedAndUnique) {
  Rng rng(6);
  const Graph g = testing::to_graph(testing::random_connected(30, 0.2, rng));
  const Clustering c(testing::random_labels(30, 5, rng));
  const CutEdgeSet cuts = cut_edges(g, c);
  const auto keys = cuts.keys();
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  EXPECT_EQ(std::adjacent_find(keys.begin(), keys.end()), keys.end());
}

TEST(Distance, SymmetricDifference) {
  const CutEdgeSet a({CutEdgeSet::key(0, 1), CutEdgeSet::key(1, 2)});
  const CutEdgeSet b({CutEdgeSet::key(1, 2), CutEdgeSet::key(2, 3)});
  EXPECT_EQ(distance(a, a), 0u);
  EXPECT_EQ(distance(a, b), 2u);
  EXPECT_EQ(distance(b, a), 2u);
  const Graph g = testing::to_graph(two_triangles());
  EXPECT_EQ(distance(CutEdgeSet{}, cut_edges(g, Clustering::singletons(6))), 7u);
}

}  // namespace
}  // namespace memclust
