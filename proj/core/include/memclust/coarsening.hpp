#pragma once

#include <vector>

#include "memclust/clustering.hpp"
#include "memclust/graph.hpp"

namespace memclust {

/// A contracted graph together with the fine-to-coarse vertex map needed to
/// carry clusterings back down.
struct CoarseningLevel {
  Graph coarse;
  std::vector<NodeID> map;  // fine vertex -> coarse vertex, surjective
};

/// Collapses every cluster of `c` into one vertex. Edges between two clusters
/// are summed into a single coarse edge; edges inside a cluster, together with
/// the members' internal weights, become the coarse internal weight. Vertex
/// weights add up. Modularity of any coarse clustering equals the modularity
/// of its projection, and m is preserved.
CoarseningLevel contract(const Graph& g, const Clustering& c);

/// Fine clustering assigning v to c_coarse[map[v]].
Clustering project(const CoarseningLevel& level, const Clustering& c_coarse);

/// Expresses a fine clustering on the coarse graph. Throws Error if some
/// coarse vertex contains fine vertices from different clusters.
Clustering restrict_to_coarse(const CoarseningLevel& level, const Clustering& fine);

}  // namespace memclust
