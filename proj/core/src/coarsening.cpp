#include "memclust/coarsening.hpp"

namespace memclust {

CoarseningLevel contract(const Graph& g, const Clustering& c) {
  if (c.size() != g.num_nodes()) throw Error("contract: clustering does not match graph");
  const ClusterID k = c.num_clusters();

  // Bucket fine vertices by cluster (counting sort keeps vertex order).
  std::vector<NodeID> start(static_cast<std::size_t>(k) + 1, 0);
  for (NodeID v = 0; v < g.num_nodes(); ++v) ++start[c[v] + 1];
  for (ClusterID i = 0; i < k; ++i) start[i + 1] += start[i];
  std::vector<NodeID> members(g.num_nodes());
  {
    std::vector<NodeID> cursor(start.begin(), start.end() - 1);
    for (NodeID v = 0; v < g.num_nodes(); ++v) members[cursor[c[v]]++] = v;
  }

  std::vector<EdgeIndex> offsets{0};
  offsets.reserve(static_cast<std::size_t>(k) + 1);
  std::vector<Neighbor> adjacency;
  std::vector<EdgeWeight> internal(k, 0);
  std::vector<NodeWeight> vweight(k, 0);

  std::vector<EdgeWeight> acc(k, 0);
  std::vector<ClusterID> touched;
  for (ClusterID a = 0; a < k; ++a) {
    EdgeWeight twice_inside = 0;
    for (NodeID i = start[a]; i < start[a + 1]; ++i) {
      const NodeID u = members[i];
      internal[a] += g.internal_weight(u);
      vweight[a] += g.vertex_weight(u);
      for (const Neighbor& e : g.neighbors(u)) {
        const ClusterID b = c[e.node];
        if (b == a) {
          twice_inside += e.weight;
          continue;
        }
        if (acc[b] == 0) touched.push_back(b);
        acc[b] += e.weight;
      }
    }
    internal[a] += twice_inside / 2;
    for (ClusterID b : touched) {
      adjacency.push_back({b, acc[b]});
      acc[b] = 0;
    }
    touched.clear();
    offsets.push_back(adjacency.size());
  }
  // Zero-weight edges never enter `touched`; they carry no modularity mass,
  // and dropping them keeps the coarse adjacency symmetric.

  CoarseningLevel level;
  level.coarse = Graph(std::move(offsets), std::move(adjacency), std::move(internal),
                       std::move(vweight));
  level.map.assign(c.assignment().begin(), c.assignment().end());
  return level;
}

Clustering project(const CoarseningLevel& level, const Clustering& c_coarse) {
  if (c_coarse.size() != level.coarse.num_nodes()) {
    throw Error("project: clustering does not match the coarse graph");
  }
  std::vector<ClusterID> fine(level.map.size());
  for (std::size_t v = 0; v < fine.size(); ++v) fine[v] = c_coarse[level.map[v]];
  return Clustering(std::move(fine));
}

Clustering restrict_to_coarse(const CoarseningLevel& level, const Clustering& fine) {
  if (fine.size() != level.map.size()) throw Error("restrict: clustering does not match level");
  constexpr ClusterID kUnset = static_cast<ClusterID>(-1);
  std::vector<ClusterID> coarse(level.coarse.num_nodes(), kUnset);
  for (std::size_t v = 0; v < fine.size(); ++v) {
    ClusterID& slot = coarse[level.map[v]];
    if (slot == kUnset) {
      slot = fine[static_cast<NodeID>(v)];
    } else if (slot != fine[static_cast<NodeID>(v)]) {
      throw Error("restrict: coarse vertex " + std::to_string(level.map[v]) +
                  " merges vertices of different clusters");
    }
  }
  return Clustering::from_labels(coarse);
}

}  // namespace memclust
