#pragma once

#include "memclust/clustering.hpp"
#include "memclust/graph.hpp"

namespace memclust {

/// Greedy volume-balanced clustering: vertices in decreasing weighted-degree
/// order (ties by lower ID) each join the cluster with the smallest volume
/// (ties by lower cluster ID).
Clustering volume_balanced_clustering(const Graph& g, ClusterID k);

/// Normalization bound B = 1 - sum_i vol(V_i)^2 / (4m^2) of the greedy
/// volume-balanced clustering with k clusters. Never exceeds 1 - 1/k.
/// Throws Error for k outside [1, n] or an edgeless graph.
double modularity_bound(const Graph& g, ClusterID k);

}  // namespace memclust
