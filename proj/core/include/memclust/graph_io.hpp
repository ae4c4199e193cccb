#pragma once

#include <filesystem>
#include <iosfwd>

#include "memclust/clustering.hpp"
#include "memclust/graph.hpp"

namespace memclust {

/// Reads a METIS graph: header "n m [fmt [ncon]]" followed by n adjacency
/// lines with 1-based neighbor indices. Lines starting with '%' are comments.
/// Edge weights are read when the last fmt digit is 1; vertex weights and
/// sizes are accepted but dropped, since every input vertex stands for one
/// original vertex. Throws ParseError naming the offending line.
Graph parse_graph(std::istream& in);
Graph read_graph_file(const std::filesystem::path& path);

/// One line per vertex holding its 0-based cluster ID.
void write_clustering(std::ostream& out, const Clustering& c);
void write_clustering_file(const std::filesystem::path& path, const Clustering& c);

/// Inverse of write_clustering. Labels need not be contiguous; the result
/// is normalized. Throws ParseError on a count mismatch or bad token.
Clustering read_clustering(std::istream& in, NodeID expected_nodes);
Clustering read_clustering_file(const std::filesystem::path& path, NodeID expected_nodes);

}  // namespace memclust
