#pragma once

#include <functional>
#include <span>
#include <vector>

#include "memclust/clustering.hpp"
#include "memclust/graph.hpp"
#include "memclust/rng.hpp"

namespace memclust {

/// Restricts which clusters a vertex may join.
struct MoveConstraint {
  /// Per-vertex component ID; when non-empty, a vertex may only join clusters
  /// lying in its own component. Every cluster of the initial clustering must
  /// already lie inside one component.
  std::span<const NodeID> component;
  /// Upper bound on cluster vertex weight, 0 for none.
  NodeWeight size_bound = 0;

  bool has_components() const { return !component.empty(); }
};

/// Mutable clustering with per-cluster volume, intra weight and vertex
/// weight, updated in O(1) per move. Volumes sum to 2m at all times.
class ClusterVolumes {
 public:
  ClusterVolumes(const Graph& g, const Clustering& init);

  ClusterID cluster_of(NodeID v) const { return assignment_[v]; }
  EdgeWeight volume(ClusterID c) const { return volume_[c]; }
  EdgeWeight intra_weight(ClusterID c) const { return intra_[c]; }
  NodeWeight size(ClusterID c) const { return size_[c]; }
  std::span<const ClusterID> assignment() const { return assignment_; }

  /// Moves u into `to`. `weight_from` is u's edge weight into its current
  /// cluster minus itself, `weight_to` its edge weight into `to`.
  void move(NodeID u, ClusterID to, EdgeWeight weight_from, EdgeWeight weight_to);

  /// Snapshot as a normalized clustering.
  Clustering clustering() const { return Clustering::from_labels(assignment_); }

 private:
  const Graph* g_;
  std::vector<ClusterID> assignment_;
  std::vector<EdgeWeight> volume_;
  std::vector<EdgeWeight> intra_;
  std::vector<NodeWeight> size_;
};

/// Edge weight from u into cluster c, excluding u itself.
EdgeWeight weight_to_cluster(const Graph& g, const ClusterVolumes& state, NodeID u, ClusterID c);

/// Change in modularity when u leaves its cluster and becomes a singleton:
/// -s/m + d(u) * (vol(C) - d(u)) / (2m^2), with s the weight from u into
/// the rest of its cluster.
double delta_q_remove(const Graph& g, const ClusterVolumes& state, NodeID u);

/// Change in modularity when u, currently a singleton, joins `target`:
/// s_t/m - d(u) * vol(target) / (2m^2).
double delta_q_insert(const Graph& g, const ClusterVolumes& state, NodeID u, ClusterID target);

struct LocalMovementOptions {
  int max_rounds = 100;
};

/// Greedy local movement: vertices are visited in a fresh random order each
/// round and moved to the neighboring cluster with the largest positive
/// modularity gain (ties broken uniformly). Stops at a local maximum or after
/// max_rounds. Never lowers modularity.
Clustering local_movement(const Graph& g, const Clustering& init, const MoveConstraint& constraint,
                          Rng& rng, const LocalMovementOptions& options = {});

/// Size-constrained label propagation from singletons. Each vertex joins the
/// neighboring cluster it is most strongly connected to, provided the target
/// stays within `size_bound` vertex weight. Ties with the current cluster keep
/// the vertex in place; other ties are broken uniformly. Stops after
/// `max_rounds` or when fewer than 5% of the vertices moved in a round.
Clustering sclp(const Graph& g, NodeWeight size_bound, int max_rounds, Rng& rng,
                std::span<const NodeID> component = {});

struct LouvainOptions {
  /// Levels clustered by SCLP before switching to local movement.
  int sclp_levels = 0;
  NodeWeight size_bound = 1;
  int sclp_rounds = 10;
  int max_local_rounds = 100;
  /// Coarsening stops once a level would shrink the graph by less than this.
  double min_contraction = 0.02;
  /// Components that clusters may not cross while coarsening.
  std::span<const NodeID> components;
  /// When false, refinement during uncoarsening ignores `components`.
  bool constrain_uncoarsening = true;
  /// Start clustering for the first local movement on the input graph.
  const Clustering* initial = nullptr;
  /// Clustering of the input graph installed on the coarsest graph in place
  /// of the last clustering phase. Must be expressible there.
  const Clustering* coarsest_seed = nullptr;
  /// Called with the input-level projection of every clustering about to be
  /// contracted.
  std::function<void(const Clustering&)> on_contract;
};

/// Multi-level Louvain: alternate a clustering phase (SCLP on the first
/// sclp_levels levels, local movement afterwards) with contraction until no
/// useful contraction remains, then project back down running local movement
/// on every level. With sclp_levels = 0 this is the classic Louvain method.
Clustering louvain_multilevel(const Graph& g, const LouvainOptions& options, Rng& rng);

}  // namespace memclust
