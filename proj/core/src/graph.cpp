#include "memclust/graph.hpp"

#include <algorithm>
#include <numeric>

namespace memclust {

Graph::Graph(std::vector<EdgeIndex> offsets, std::vector<Neighbor> adjacency,
             std::vector<EdgeWeight> internal_weight,
             std::vector<NodeWeight> vertex_weight)
    : offsets_(std::move(offsets)),
      adjacency_(std::move(adjacency)),
      internal_weight_(std::move(internal_weight)),
      vertex_weight_(std::move(vertex_weight)) {
  const std::size_t n = vertex_weight_.size();
  if (offsets_.size() != n + 1 || internal_weight_.size() != n) {
    throw Error("graph: array sizes do not match vertex count");
  }
  if (offsets_.front() != 0 || offsets_.back() != adjacency_.size()) {
    throw Error("graph: offsets do not cover the adjacency array");
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (offsets_[v] > offsets_[v + 1]) throw Error("graph: offsets not monotone");
  }

  auto by_node = [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; };
  weighted_degree_.assign(n, 0);
  EdgeWeight adjacency_sum = 0;
  for (NodeID v = 0; v < n; ++v) {
    auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last, by_node);
    if (internal_weight_[v] < 0) throw Error("graph: negative internal weight");
    if (vertex_weight_[v] <= 0) throw Error("graph: vertex weight must be positive");
    EdgeWeight deg = 2 * internal_weight_[v];
    for (auto it = first; it != last; ++it) {
      if (it->node >= n) throw Error("graph: neighbor index out of range");
      if (it->node == v) throw Error("graph: explicit self-edge");
      if (it->weight < 0) throw Error("graph: negative edge weight");
      if (it != first && std::prev(it)->node == it->node) {
        throw Error("graph: parallel edge");
      }
      deg += it->weight;
    }
    weighted_degree_[v] = deg;
    adjacency_sum += deg - 2 * internal_weight_[v];
  }

  for (NodeID u = 0; u < n; ++u) {
    for (const Neighbor& e : neighbors(u)) {
      auto back = neighbors(e.node);
      auto it = std::lower_bound(back.begin(), back.end(), Neighbor{u, 0}, by_node);
      if (it == back.end() || it->node != u || it->weight != e.weight) {
        throw Error("graph: adjacency is not symmetric at edge (" + std::to_string(u) +
                    ", " + std::to_string(e.node) + ")");
      }
    }
  }

  total_weight_ = adjacency_sum / 2 +
                  std::accumulate(internal_weight_.begin(), internal_weight_.end(), EdgeWeight{0});
  total_vertex_weight_ =
      std::accumulate(vertex_weight_.begin(), vertex_weight_.end(), NodeWeight{0});
}

Graph Graph::from_edges(NodeID n, std::span<const WeightedEdge> edges) {
  std::vector<EdgeIndex> offsets(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) throw Error("graph: edge endpoint out of range");
    if (e.u == e.v) throw Error("graph: self-loop " + std::to_string(e.u));
    ++offsets[e.u + 1];
    ++offsets[e.v + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<Neighbor> adjacency(offsets.back());
  std::vector<EdgeIndex> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& e : edges) {
    adjacency[cursor[e.u]++] = {e.v, e.weight};
    adjacency[cursor[e.v]++] = {e.u, e.weight};
  }
  return Graph(std::move(offsets), std::move(adjacency), std::vector<EdgeWeight>(n, 0),
               std::vector<NodeWeight>(n, 1));
}

Graph induced_subgraph(const Graph& g, std::span<const NodeID> nodes) {
  constexpr NodeID kAbsent = static_cast<NodeID>(-1);
  std::vector<NodeID> local(g.num_nodes(), kAbsent);
  for (NodeID i = 0; i < nodes.size(); ++i) local[nodes[i]] = i;

  std::vector<EdgeIndex> offsets{0};
  offsets.reserve(nodes.size() + 1);
  std::vector<Neighbor> adjacency;
  std::vector<EdgeWeight> internal;
  std::vector<NodeWeight> vweight;
  internal.reserve(nodes.size());
  vweight.reserve(nodes.size());
  for (NodeID v : nodes) {
    for (const Neighbor& e : g.neighbors(v)) {
      if (local[e.node] != kAbsent) adjacency.push_back({local[e.node], e.weight});
    }
    offsets.push_back(adjacency.size());
    internal.push_back(g.internal_weight(v));
    vweight.push_back(g.vertex_weight(v));
  }
  return Graph(std::move(offsets), std::move(adjacency), std::move(internal), std::move(vweight));
}

}  // namespace memclust
