#include "memclust/louvain.hpp"

#include <cmath>
#include <numeric>
#include <optional>

#include "memclust/coarsening.hpp"

namespace memclust {

namespace {

// Gains are compared on the exact integer scale 2m^2 * dQ, so ties and
// "no improvement" are decided without floating-point noise.
__extension__ typedef __int128 ScaledGain;

// Collects the edge weight from one vertex into each neighboring cluster.
class NeighborWeights {
 public:
  explicit NeighborWeights(std::size_t clusters) : weight_(clusters, 0), seen_(clusters, false) {}

  void add(ClusterID c, EdgeWeight w) {
    if (!seen_[c]) {
      seen_[c] = true;
      touched_.push_back(c);
    }
    weight_[c] += w;
  }
  EdgeWeight operator[](ClusterID c) const { return weight_[c]; }
  const std::vector<ClusterID>& touched() const { return touched_; }

  void clear() {
    for (ClusterID c : touched_) {
      weight_[c] = 0;
      seen_[c] = false;
    }
    touched_.clear();
  }

 private:
  std::vector<EdgeWeight> weight_;
  std::vector<bool> seen_;
  std::vector<ClusterID> touched_;
};

std::vector<NodeID> identity_order(NodeID n) {
  std::vector<NodeID> order(n);
  std::iota(order.begin(), order.end(), NodeID{0});
  return order;
}

}  // namespace

ClusterVolumes::ClusterVolumes(const Graph& g, const Clustering& init)
    : g_(&g),
      assignment_(init.assignment().begin(), init.assignment().end()),
      volume_(init.num_clusters(), 0),
      intra_(init.num_clusters(), 0),
      size_(init.num_clusters(), 0) {
  if (init.size() != g.num_nodes()) throw Error("clustering does not match graph");
  for (NodeID v = 0; v < g.num_nodes(); ++v) {
    const ClusterID c = assignment_[v];
    volume_[c] += g.weighted_degree(v);
    size_[c] += g.vertex_weight(v);
    intra_[c] += g.internal_weight(v);
    for (const Neighbor& e : g.neighbors(v)) {
      // Each intra edge is seen from both ends; count it on the smaller one.
      if (v < e.node && assignment_[e.node] == c) intra_[c] += e.weight;
    }
  }
}

void ClusterVolumes::move(NodeID u, ClusterID to, EdgeWeight weight_from, EdgeWeight weight_to) {
  const ClusterID from = assignment_[u];
  if (from == to) return;
  const EdgeWeight d = g_->weighted_degree(u);
  const EdgeWeight self = g_->internal_weight(u);
  volume_[from] -= d;
  volume_[to] += d;
  intra_[from] -= weight_from + self;
  intra_[to] += weight_to + self;
  size_[from] -= g_->vertex_weight(u);
  size_[to] += g_->vertex_weight(u);
  assignment_[u] = to;
}

EdgeWeight weight_to_cluster(const Graph& g, const ClusterVolumes& state, NodeID u, ClusterID c) {
  EdgeWeight s = 0;
  for (const Neighbor& e : g.neighbors(u)) {
    if (state.cluster_of(e.node) == c) s += e.weight;
  }
  return s;
}

double delta_q_remove(const Graph& g, const ClusterVolumes& state, NodeID u) {
  const double m = static_cast<double>(g.total_weight());
  const ClusterID c = state.cluster_of(u);
  const double s = static_cast<double>(weight_to_cluster(g, state, u, c));
  const double d = static_cast<double>(g.weighted_degree(u));
  const double rest = static_cast<double>(state.volume(c)) - d;
  return -s / m + d * rest / (2.0 * m * m);
}

double delta_q_insert(const Graph& g, const ClusterVolumes& state, NodeID u, ClusterID target) {
  const double m = static_cast<double>(g.total_weight());
  const double s = static_cast<double>(weight_to_cluster(g, state, u, target));
  const double d = static_cast<double>(g.weighted_degree(u));
  return s / m - d * static_cast<double>(state.volume(target)) / (2.0 * m * m);
}

Clustering local_movement(const Graph& g, const Clustering& init, const MoveConstraint& constraint,
                          Rng& rng, const LocalMovementOptions& options) {
  const NodeID n = g.num_nodes();
  ClusterVolumes state(g, init);
  if (n == 0 || g.total_weight() == 0) return init.normalized();

  const ScaledGain two_m = 2 * static_cast<ScaledGain>(g.total_weight());
  NeighborWeights weights(init.num_clusters());
  std::vector<ClusterID> best;
  std::vector<NodeID> order = identity_order(n);

  for (int round = 0; round < options.max_rounds; ++round) {
    rng.shuffle(std::span<NodeID>(order));
    std::size_t moves = 0;
    for (NodeID u : order) {
      const ClusterID own = state.cluster_of(u);
      for (const Neighbor& e : g.neighbors(u)) {
        if (constraint.has_components() && constraint.component[e.node] != constraint.component[u]) {
          continue;
        }
        weights.add(state.cluster_of(e.node), e.weight);
      }
      const ScaledGain d = g.weighted_degree(u);
      const ScaledGain remove =
          -two_m * weights[own] + d * (static_cast<ScaledGain>(state.volume(own)) - d);

      ScaledGain best_gain = 0;
      best.clear();
      for (ClusterID c : weights.touched()) {
        if (c == own) continue;
        const ScaledGain gain = remove + two_m * weights[c] - d * state.volume(c);
        if (gain > best_gain) {
          best_gain = gain;
          best.assign(1, c);
        } else if (gain == best_gain && gain > 0) {
          best.push_back(c);
        }
      }
      if (!best.empty()) {
        const ClusterID target =
            best.size() == 1 ? best.front() : best[rng.uniform_int<std::size_t>(0, best.size() - 1)];
        state.move(u, target, weights[own], weights[target]);
        ++moves;
      }
      weights.clear();
    }
    if (moves == 0) break;
  }
  return state.clustering();
}

Clustering sclp(const Graph& g, NodeWeight size_bound, int max_rounds, Rng& rng,
                std::span<const NodeID> component) {
  const NodeID n = g.num_nodes();
  ClusterVolumes state(g, Clustering::singletons(n));
  NeighborWeights weights(n);
  std::vector<ClusterID> best;
  std::vector<NodeID> order = identity_order(n);

  for (int round = 0; round < max_rounds; ++round) {
    rng.shuffle(std::span<NodeID>(order));
    std::size_t moved = 0;
    for (NodeID u : order) {
      const ClusterID own = state.cluster_of(u);
      for (const Neighbor& e : g.neighbors(u)) {
        if (!component.empty() && component[e.node] != component[u]) continue;
        weights.add(state.cluster_of(e.node), e.weight);
      }
      EdgeWeight best_weight = weights[own];
      best.clear();
      for (ClusterID c : weights.touched()) {
        if (c == own || state.size(c) + g.vertex_weight(u) > size_bound) continue;
        if (weights[c] > best_weight) {
          best_weight = weights[c];
          best.assign(1, c);
        } else if (weights[c] == best_weight && !best.empty()) {
          best.push_back(c);
        }
      }
      if (!best.empty()) {
        const ClusterID target =
            best.size() == 1 ? best.front() : best[rng.uniform_int<std::size_t>(0, best.size() - 1)];
        state.move(u, target, weights[own], weights[target]);
        ++moved;
      }
      weights.clear();
    }
    if (static_cast<double>(moved) < 0.05 * static_cast<double>(n)) break;
  }
  return state.clustering();
}

Clustering louvain_multilevel(const Graph& g, const LouvainOptions& options, Rng& rng) {
  std::vector<CoarseningLevel> levels;
  // components[i] holds the component IDs for the graph at level i.
  std::vector<std::vector<NodeID>> components;
  const bool constrained = !options.components.empty();
  if (constrained) {
    if (options.components.size() != g.num_nodes()) {
      throw Error("louvain: component array does not match graph");
    }
    components.emplace_back(options.components.begin(), options.components.end());
  }

  auto graph_at = [&](std::size_t level) -> const Graph& {
    return level == 0 ? g : levels[level - 1].coarse;
  };
  auto constraint_at = [&](std::size_t level, bool use) {
    MoveConstraint c;
    if (constrained && use) c.component = components[level];
    return c;
  };
  auto fine_projection = [&](Clustering c) {
    for (std::size_t i = levels.size(); i > 0; --i) c = project(levels[i - 1], c);
    return c;
  };
  const LocalMovementOptions lm{options.max_local_rounds};

  Clustering top;
  int sclp_levels = options.sclp_levels;
  for (std::size_t level = 0;; ++level) {
    const Graph& current = graph_at(level);
    const NodeID n = current.num_nodes();
    auto too_small = [&](const Clustering& c) {
      return c.num_clusters() == n ||
             static_cast<double>(n - c.num_clusters()) < options.min_contraction * n;
    };

    std::optional<Clustering> c;
    if (static_cast<int>(level) < sclp_levels && !(level == 0 && options.initial)) {
      c = sclp(current, options.size_bound, options.sclp_rounds, rng,
               constrained ? std::span<const NodeID>(components[level]) : std::span<const NodeID>{});
      // A label propagation level that barely contracts hands over to
      // local movement instead of ending the hierarchy.
      if (too_small(*c)) {
        sclp_levels = static_cast<int>(level);
        c.reset();
      }
    }
    if (!c) {
      const Clustering start = (level == 0 && options.initial) ? *options.initial
                                                               : Clustering::singletons(n);
      c = local_movement(current, start, constraint_at(level, true), rng, lm);
    }
    if (too_small(*c)) {
      top = std::move(*c);
      break;
    }
    if (options.on_contract) options.on_contract(fine_projection(*c));
    levels.push_back(contract(current, *c));
    if (constrained) {
      std::vector<NodeID> coarse_component(levels.back().coarse.num_nodes());
      const auto& map = levels.back().map;
      for (std::size_t v = 0; v < map.size(); ++v) coarse_component[map[v]] = components[level][v];
      components.push_back(std::move(coarse_component));
    }
  }

  const std::size_t depth = levels.size();
  if (options.coarsest_seed) {
    const Clustering& seed = *options.coarsest_seed;
    if (seed.size() != g.num_nodes()) throw Error("louvain: seed does not match graph");
    // Compose the level maps to find each input vertex's coarsest vertex.
    std::vector<NodeID> to_top(g.num_nodes());
    std::iota(to_top.begin(), to_top.end(), NodeID{0});
    for (const auto& level : levels) {
      for (NodeID& v : to_top) v = level.map[v];
    }
    constexpr ClusterID kUnset = static_cast<ClusterID>(-1);
    std::vector<ClusterID> labels(graph_at(depth).num_nodes(), kUnset);
    for (NodeID v = 0; v < g.num_nodes(); ++v) {
      ClusterID& slot = labels[to_top[v]];
      if (slot != kUnset && slot != seed[v]) {
        throw Error("louvain: seed clustering splits a coarse vertex");
      }
      slot = seed[v];
    }
    top = Clustering::from_labels(labels);
  }
  Clustering c = local_movement(graph_at(depth), top,
                                constraint_at(depth, options.constrain_uncoarsening), rng, lm);
  for (std::size_t i = depth; i > 0; --i) {
    c = project(levels[i - 1], c);
    c = local_movement(graph_at(i - 1), c, constraint_at(i - 1, options.constrain_uncoarsening),
                       rng, lm);
  }
  return c;
}

}  // namespace memclust
