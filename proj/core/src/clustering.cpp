#include "memclust/clustering.hpp"

#include <algorithm>
#include <unordered_map>

namespace memclust {

namespace {

void require_match(const Graph& g, const Clustering& c) {
  if (c.size() != g.num_nodes()) {
    throw Error("clustering has " + std::to_string(c.size()) + " entries, graph has " +
                std::to_string(g.num_nodes()) + " vertices");
  }
}

void require_edges(const Graph& g) {
  if (g.total_weight() <= 0) throw Error("score undefined on a graph without edge weight");
}

}  // namespace

Clustering::Clustering(std::vector<ClusterID> assignment) : assignment_(std::move(assignment)) {
  if (assignment_.empty()) return;
  const ClusterID max_id = *std::max_element(assignment_.begin(), assignment_.end());
  if (max_id >= assignment_.size()) throw Error("clustering: cluster ID out of range");
  std::vector<bool> seen(static_cast<std::size_t>(max_id) + 1, false);
  for (ClusterID id : assignment_) seen[id] = true;
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error("clustering: cluster IDs are not contiguous");
  }
  k_ = max_id + 1;
}

Clustering Clustering::from_labels(std::span<const ClusterID> labels) {
  std::unordered_map<ClusterID, ClusterID> relabel;
  relabel.reserve(labels.size());
  Clustering c;
  c.assignment_.resize(labels.size());
  for (std::size_t v = 0; v < labels.size(); ++v) {
    auto [it, inserted] = relabel.try_emplace(labels[v], static_cast<ClusterID>(relabel.size()));
    c.assignment_[v] = it->second;
  }
  c.k_ = static_cast<ClusterID>(relabel.size());
  return c;
}

Clustering Clustering::singletons(NodeID n) {
  Clustering c;
  c.assignment_.resize(n);
  for (NodeID v = 0; v < n; ++v) c.assignment_[v] = v;
  c.k_ = n;
  return c;
}

Clustering Clustering::single_cluster(NodeID n) {
  Clustering c;
  c.assignment_.assign(n, 0);
  c.k_ = n > 0 ? 1 : 0;
  return c;
}

bool CutEdgeSet::contains(NodeID u, NodeID v) const {
  return std::binary_search(keys_.begin(), keys_.end(), key(u, v));
}

EdgeWeight intra_cluster_weight(const Graph& g, const Clustering& c) {
  require_match(g, c);
  EdgeWeight twice_intra = 0;
  for (NodeID u = 0; u < g.num_nodes(); ++u) {
    twice_intra += 2 * g.internal_weight(u);
    for (const Neighbor& e : g.neighbors(u)) {
      if (c[u] == c[e.node]) twice_intra += e.weight;
    }
  }
  return twice_intra / 2;
}

std::vector<EdgeWeight> cluster_volumes(const Graph& g, const Clustering& c) {
  require_match(g, c);
  std::vector<EdgeWeight> volume(c.num_clusters(), 0);
  for (NodeID v = 0; v < g.num_nodes(); ++v) volume[c[v]] += g.weighted_degree(v);
  return volume;
}

double modularity(const Graph& g, const Clustering& c) {
  require_edges(g);
  const double m = static_cast<double>(g.total_weight());
  const double intra = static_cast<double>(intra_cluster_weight(g, c));
  long double squares = 0;
  for (EdgeWeight vol : cluster_volumes(g, c)) {
    squares += static_cast<long double>(vol) * static_cast<long double>(vol);
  }
  return intra / m - static_cast<double>(squares / (4.0L * m * m));
}

double coverage(const Graph& g, const Clustering& c) {
  require_edges(g);
  return static_cast<double>(intra_cluster_weight(g, c)) / static_cast<double>(g.total_weight());
}

Clustering overlay(const Graph& g, const Clustering& c1, const Clustering& c2) {
  require_match(g, c1);
  require_match(g, c2);
  constexpr ClusterID kUnset = static_cast<ClusterID>(-1);
  std::vector<ClusterID> label(g.num_nodes(), kUnset);
  std::vector<NodeID> stack;
  ClusterID next = 0;
  // Components are discovered in vertex order, so labels come out normalized.
  for (NodeID root = 0; root < g.num_nodes(); ++root) {
    if (label[root] != kUnset) continue;
    label[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      const NodeID u = stack.back();
      stack.pop_back();
      for (const Neighbor& e : g.neighbors(u)) {
        const NodeID v = e.node;
        if (label[v] == kUnset && c1[u] == c1[v] && c2[u] == c2[v]) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return Clustering(std::move(label));
}

Clustering pairwise_label_overlay(const Clustering& c1, const Clustering& c2) {
  if (c1.size() != c2.size()) throw Error("overlay: clusterings differ in length");
  struct PairHash {
    std::size_t operator()(std::uint64_t key) const noexcept {
      key ^= key >> 33;
      key *= 0xff51afd7ed558ccdULL;
      key ^= key >> 33;
      return static_cast<std::size_t>(key);
    }
  };
  std::unordered_map<std::uint64_t, ClusterID, PairHash> ids;
  ids.reserve(c1.size());
  std::vector<ClusterID> out(c1.size());
  ClusterID counter = 0;
  for (NodeID v = 0; v < c1.size(); ++v) {
    const std::uint64_t pair = (static_cast<std::uint64_t>(c1[v]) << 32) | c2[v];
    auto [it, inserted] = ids.try_emplace(pair, counter);
    if (inserted) ++counter;
    out[v] = it->second;
  }
  Clustering result(std::move(out));
  if (result.num_clusters() != counter) throw Error("overlay: counter mismatch");
  return result;
}

CutEdgeSet cut_edges(const Graph& g, const Clustering& c) {
  require_match(g, c);
  std::vector<std::uint64_t> keys;
  for (NodeID u = 0; u < g.num_nodes(); ++u) {
    for (const Neighbor& e : g.neighbors(u)) {
      // Adjacency is sorted, so emitting only u < v yields sorted keys.
      if (u < e.node && c[u] != c[e.node]) keys.push_back(CutEdgeSet::key(u, e.node));
    }
  }
  return CutEdgeSet(std::move(keys));
}

std::size_t distance(const CutEdgeSet& a, const CutEdgeSet& b) {
  auto x = a.keys();
  auto y = b.keys();
  std::size_t i = 0, j = 0, common = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] < y[j]) {
      ++i;
    } else if (y[j] < x[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return x.size() + y.size() - 2 * common;
}

}  // namespace memclust
