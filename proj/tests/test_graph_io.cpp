#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "memclust/graph_io.hpp"

namespace memclust {
namespace {

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return 0;
}

TEST(GraphIo, ParsesUnweightedGraph) {
  const Graph g = parse(
      "% two triangles\n"
      "6 7\n"
      "2 3\n1 3\n1 2 4\n3 5 6\n4 6\n4 5\n");
  EXPECT_EQ(g.num_nodes(), 6u);
  EXPECT_EQ(g.num_edges(), 7u);
  EXPECT_EQ(g.total_weight(), 7);
  EXPECT_EQ(g.weighted_degree(2), 3);
}

TEST(GraphIo, ParsesEdgeWeights) {
  const Graph g = parse("3 2 1\n2 5\n1 5 3 2\n2 2\n");
  EXPECT_EQ(g.total_weight(), 7);
  EXPECT_EQ(g.weighted_degree(1), 7);
}

TEST(GraphIo, DropsVertexWeightsAndSizes) {
  const Graph g = parse("3 2 111\n4 9 2 5\n1 1 1 5 3 2\n2 7 2 2\n");
  EXPECT_EQ(g.total_weight(), 7);
  for (NodeID v = 0; v < 3; ++v) EXPECT_EQ(g.vertex_weight(v), 1);
  const Graph h = parse("2 1 10\n3 2\n8 1\n");
  EXPECT_EQ(h.total_weight(), 1);
}

TEST(GraphIo, AllowsCommentsAndIsolatedVertices) {
  const Graph g = parse("%c\n\n3 1\n% vertex 1\n2\n1\n\n");
  EXPECT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.degree(2), 0u);
}

TEST(GraphIo, ReportsOffendingLine) {
  EXPECT_EQ(error_line("3 2\n2\n1 4\n2\n"), 3u);           // out of range
  EXPECT_EQ(error_line("2 1\n1 2\n1\n"), 2u);              // self-loop
  EXPECT_EQ(error_line("2 1\n2 2\n1\n"), 2u);              // duplicate neighbor
  EXPECT_EQ(error_line("3 1\n2\n3\n\n"), 2u);              // missing reverse
  EXPECT_EQ(error_line("2 1 1\n2 3\n1 4\n"), 2u);          // asymmetric weight
  EXPECT_EQ(error_line("2 5\n2\n1\n"), 1u);                // wrong edge count
  EXPECT_EQ(error_line("2 1\n2\n1\n1\n"), 4u);             // trailing data
  EXPECT_EQ(error_line("2 1\n2 x\n1\n"), 2u);              // bad token
  EXPECT_EQ(error_line("2 1 1\n2 -1\n1 -1\n"), 2u);        // negative weight
  EXPECT_EQ(error_line("% only comments\n"), 1u);          // no header
}

TEST(GraphIo, RejectsTruncatedInput) {
  EXPECT_THROW(parse("3 1\n2\n"), ParseError);
}

TEST(GraphIo, ClusteringRoundTrip) {
  const Clustering c({0, 1, 0, 2, 1});
  std::stringstream buffer;
  write_clustering(buffer, c);
  EXPECT_EQ(buffer.str(), "0\n1\n0\n2\n1\n");
  EXPECT_EQ(read_clustering(buffer, 5), c);
}

TEST(GraphIo, ReadClusteringNormalizesAndChecksCount) {
  std::istringstream in("7\n3\n7\n");
  EXPECT_EQ(read_clustering(in, 3), Clustering({0, 1, 0}));
  std::istringstream short_in("0\n1\n");
  EXPECT_THROW(read_clustering(short_in, 3), ParseError);
}

TEST(GraphIo, FileHelpers) {
  const auto dir = std::filesystem::temp_directory_path() / "memclust_graph_io_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "g.graph");
    out << "2 1\n2\n1\n";
  }
  const Graph g = read_graph_file(dir / "g.graph");
  EXPECT_EQ(g.num_edges(), 1u);
  write_clustering_file(dir / "g.clu", Clustering::single_cluster(2));
  EXPECT_EQ(read_clustering_file(dir / "g.clu", 2), Clustering::single_cluster(2));
  EXPECT_THROW(read_graph_file(dir / "missing.graph"), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace memclust
