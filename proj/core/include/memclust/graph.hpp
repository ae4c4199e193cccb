#pragma once

#include <span>
#include <string>
#include <vector>

#include "memclust/types.hpp"

namespace memclust {

struct Neighbor {
  NodeID node;
  EdgeWeight weight;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct WeightedEdge {
  NodeID u;
  NodeID v;
  EdgeWeight weight = 1;
};

/// Static weighted undirected graph in compressed adjacency form.
///
/// Self-contribution of a vertex (edges collapsed into it by contraction) is
/// kept in internal_weight instead of explicit self-edges. The weighted degree
/// counts it twice, so the degrees always sum to 2m where m is the sum of all
/// distinct edge weights plus all internal weights. Immutable after
/// construction.
class Graph {
 public:
  Graph() = default;

  /// Takes ownership of a CSR layout. Throws Error if the layout is
  /// inconsistent (bad offsets, self-edges, out-of-range targets, negative
  /// weights, or asymmetric adjacency).
  Graph(std::vector<EdgeIndex> offsets, std::vector<Neighbor> adjacency,
        std::vector<EdgeWeight> internal_weight,
        std::vector<NodeWeight> vertex_weight);

  /// Unit vertex weights, zero internal weights. Rejects self-loops and
  /// duplicate edges.
  static Graph from_edges(NodeID n, std::span<const WeightedEdge> edges);

  NodeID num_nodes() const { return static_cast<NodeID>(vertex_weight_.size()); }
  /// Number of distinct undirected edges, internal weight excluded.
  EdgeIndex num_edges() const { return adjacency_.size() / 2; }
  /// m: distinct edge weight plus internal weight.
  EdgeWeight total_weight() const { return total_weight_; }
  NodeWeight total_vertex_weight() const { return total_vertex_weight_; }

  std::span<const Neighbor> neighbors(NodeID v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  EdgeIndex degree(NodeID v) const { return offsets_[v + 1] - offsets_[v]; }
  EdgeWeight internal_weight(NodeID v) const { return internal_weight_[v]; }
  EdgeWeight weighted_degree(NodeID v) const { return weighted_degree_[v]; }
  NodeWeight vertex_weight(NodeID v) const { return vertex_weight_[v]; }

  std::span<const EdgeIndex> offsets() const { return offsets_; }
  std::span<const Neighbor> adjacency() const { return adjacency_; }

 private:
  std::vector<EdgeIndex> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<EdgeWeight> internal_weight_;
  std::vector<NodeWeight> vertex_weight_;
  std::vector<EdgeWeight> weighted_degree_;
  EdgeWeight total_weight_ = 0;
  NodeWeight total_vertex_weight_ = 0;
};

/// Subgraph induced by `nodes` (in that order) with the original vertex and
/// internal weights. Edges leaving the node set are dropped.
Graph induced_subgraph(const Graph& g, std::span<const NodeID> nodes);

}  // namespace memclust
