#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "memclust/graph.hpp"
#include "memclust/types.hpp"

namespace memclust {

/// Partition of the vertex set. Cluster IDs are contiguous in [0, k) and
/// every cluster is nonempty.
class Clustering {
 public:
  Clustering() = default;

  /// Validates that `assignment` uses exactly the IDs 0..k-1. Throws Error
  /// otherwise. Does not relabel.
  explicit Clustering(std::vector<ClusterID> assignment);

  /// Accepts arbitrary labels and relabels them by first occurrence in
  /// vertex order.
  static Clustering from_labels(std::span<const ClusterID> labels);
  static Clustering singletons(NodeID n);
  static Clustering single_cluster(NodeID n);

  NodeID size() const { return static_cast<NodeID>(assignment_.size()); }
  ClusterID num_clusters() const { return k_; }
  ClusterID operator[](NodeID v) const { return assignment_[v]; }
  std::span<const ClusterID> assignment() const { return assignment_; }

  /// Relabels clusters by first occurrence in vertex order. Two clusterings
  /// describe the same partition iff their normalized forms are equal.
  Clustering normalized() const { return from_labels(assignment_); }
  bool same_partition(const Clustering& other) const {
    return normalized().assignment_ == other.normalized().assignment_;
  }

  friend bool operator==(const Clustering&, const Clustering&) = default;

 private:
  std::vector<ClusterID> assignment_;
  ClusterID k_ = 0;
};

/// Sorted, duplicate-free set of inter-cluster edges, each identified by its
/// canonical (min, max) endpoint pair.
class CutEdgeSet {
 public:
  CutEdgeSet() = default;
  explicit CutEdgeSet(std::vector<std::uint64_t> sorted_keys) : keys_(std::move(sorted_keys)) {}

  static std::uint64_t key(NodeID u, NodeID v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }

  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  bool contains(NodeID u, NodeID v) const;
  std::span<const std::uint64_t> keys() const { return keys_; }

  friend bool operator==(const CutEdgeSet&, const CutEdgeSet&) = default;

 private:
  std::vector<std::uint64_t> keys_;
};

/// Total weight of intra-cluster edges plus every internal weight: m(C).
EdgeWeight intra_cluster_weight(const Graph& g, const Clustering& c);

/// Per-cluster sum of weighted degrees. Sums to 2m.
std::vector<EdgeWeight> cluster_volumes(const Graph& g, const Clustering& c);

/// Q(C) = m(C)/m - sum_i vol(V_i)^2 / (4m^2). Throws Error on an edgeless
/// graph or when the clustering does not match the graph.
double modularity(const Graph& g, const Clustering& c);

/// m(C)/m. Throws Error on an edgeless graph.
double coverage(const Graph& g, const Clustering& c);

/// Connectivity overlay: clusters are the connected components of G after
/// removing every edge cut by c1 or c2. Normalized.
Clustering overlay(const Graph& g, const Clustering& c1, const Clustering& c2);

/// Label-intersection overlay: vertices share a cluster iff they share one
/// in both inputs. Linear expected time via a hash map over label pairs.
Clustering pairwise_label_overlay(const Clustering& c1, const Clustering& c2);

CutEdgeSet cut_edges(const Graph& g, const Clustering& c);

/// Size of the symmetric difference of two cut-edge sets.
std::size_t distance(const CutEdgeSet& a, const CutEdgeSet& b);

}  // namespace memclust
