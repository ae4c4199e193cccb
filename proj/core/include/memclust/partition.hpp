#pragma once

#include <cstdint>
#include <optional>

#include "memclust/clustering.hpp"
#include "memclust/graph.hpp"

namespace memclust {

struct PartitionParams {
  ClusterID k = 2;
  double epsilon = 0.03;
  std::uint64_t seed = 0;
};

/// Imbalance used when a mutation splits one cluster in two.
inline constexpr double kSplitImbalance = 0.03;

/// L_max = (1 + epsilon) * ceil(total / k), rounded down to an integer weight.
NodeWeight max_block_weight(NodeWeight total, ClusterID k, double epsilon);

/// Total weight of edges running between different blocks.
EdgeWeight edge_cut(const Graph& g, const Clustering& c);

/// Balanced k-way partition by recursive multi-level bisection: label
/// propagation coarsening, greedy graph-growing initial bisection and
/// boundary FM refinement with rollback. Returns exactly k nonempty blocks,
/// each within L_max. Throws Error when k exceeds n, when epsilon is outside
/// [0, 1], or when the vertex weights admit no balanced result.
/// Deterministic for a given seed.
Clustering partition(const Graph& g, const PartitionParams& params);

/// Splits one cluster into two blocks of at most
/// ceil((1 + kSplitImbalance) / 2 * W_cluster) vertex weight with a small
/// cut between them. The second block gets ID k; all other assignments are
/// left untouched. Returns nullopt for a singleton cluster.
std::optional<Clustering> bisect_cluster(const Graph& g, const Clustering& c, ClusterID cluster,
                                         std::uint64_t seed);

}  // namespace memclust
