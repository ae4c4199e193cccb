#include "memclust/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <tuple>

#include "memclust/coarsening.hpp"
#include "memclust/louvain.hpp"
#include "memclust/rng.hpp"

namespace memclust {

namespace {

constexpr NodeID kCoarsestSize = 64;
constexpr int kInitialAttempts = 8;
constexpr int kMaxPasses = 8;
constexpr int kCoarseningRounds = 10;

using Sides = std::vector<std::uint8_t>;

struct BisectionTarget {
  NodeWeight max_weight[2];
  NodeWeight target0;
  NodeID min_count[2];
};

struct Balance {
  NodeWeight weight[2] = {0, 0};
  NodeID count[2] = {0, 0};

  Balance(const Graph& g, const Sides& side) {
    for (NodeID v = 0; v < g.num_nodes(); ++v) {
      weight[side[v]] += g.vertex_weight(v);
      ++count[side[v]];
    }
  }

  void move(NodeWeight w, int from) {
    weight[from] -= w;
    weight[1 - from] += w;
    --count[from];
    ++count[1 - from];
  }

  // Total amount by which the bisection breaks its weight and count bounds.
  NodeWeight violation(const BisectionTarget& t) const {
    NodeWeight v = 0;
    for (int s = 0; s < 2; ++s) {
      v += std::max<NodeWeight>(0, weight[s] - t.max_weight[s]);
      v += std::max<NodeWeight>(0, static_cast<NodeWeight>(t.min_count[s]) - count[s]);
    }
    return v;
  }
};

EdgeWeight cut_of(const Graph& g, const Sides& side) {
  EdgeWeight twice = 0;
  for (NodeID u = 0; u < g.num_nodes(); ++u) {
    for (const Neighbor& e : g.neighbors(u)) {
      if (side[u] != side[e.node]) twice += e.weight;
    }
  }
  return twice / 2;
}

// Cut reduction when v switches sides.
EdgeWeight move_gain(const Graph& g, const Sides& side, NodeID v) {
  EdgeWeight gain = 0;
  for (const Neighbor& e : g.neighbors(v)) gain += side[e.node] != side[v] ? e.weight : -e.weight;
  return gain;
}

struct QueueEntry {
  EdgeWeight gain;
  std::uint32_t tiebreak;
  NodeID node;

  bool operator<(const QueueEntry& o) const {
    return std::tie(gain, tiebreak) < std::tie(o.gain, o.tiebreak);
  }
};

// Boundary FM with per-pass rollback to the best prefix. States are ranked by
// (constraint violation, cut).
void fm_refine(const Graph& g, Sides& side, const BisectionTarget& t, Rng& rng) {
  const NodeID n = g.num_nodes();
  if (n < 2) return;
  Balance balance(g, side);
  EdgeWeight cut = cut_of(g, side);
  const std::size_t patience = std::max<std::size_t>(32, n / 16);

  std::vector<EdgeWeight> gain(n);
  std::vector<bool> locked(n);
  std::vector<NodeID> log;

  for (int pass = 0; pass < kMaxPasses; ++pass) {
    std::priority_queue<QueueEntry> queue[2];
    std::fill(locked.begin(), locked.end(), false);
    const NodeWeight start_violation = balance.violation(t);
    for (NodeID v = 0; v < n; ++v) {
      gain[v] = move_gain(g, side, v);
      const bool boundary = std::any_of(g.neighbors(v).begin(), g.neighbors(v).end(),
                                        [&](const Neighbor& e) { return side[e.node] != side[v]; });
      // Unbalanced states need vertices beyond the boundary as well.
      if (boundary || start_violation > 0) {
        queue[side[v]].push({gain[v], static_cast<std::uint32_t>(rng.next()), v});
      }
    }

    auto best = std::make_pair(balance.violation(t), cut);
    std::size_t best_len = 0;
    std::size_t since_best = 0;
    log.clear();

    while (true) {
      for (auto& q : queue) {
        while (!q.empty()) {
          const QueueEntry& top = q.top();
          if (locked[top.node] || gain[top.node] != top.gain || &q != &queue[side[top.node]]) {
            q.pop();
          } else {
            break;
          }
        }
      }
      if (queue[0].empty() && queue[1].empty()) break;

      const NodeWeight before = balance.violation(t);
      auto admissible = [&](int s) {
        if (queue[s].empty()) return false;
        Balance after = balance;
        after.move(g.vertex_weight(queue[s].top().node), s);
        return after.violation(t) <= before;
      };
      const bool ok0 = admissible(0);
      const bool ok1 = admissible(1);
      if (!ok0 && !ok1) {
        // Both tops would break balance; drop them for this pass.
        for (int s = 0; s < 2; ++s) {
          if (!queue[s].empty()) {
            locked[queue[s].top().node] = true;
            queue[s].pop();
          }
        }
        continue;
      }
      int from;
      if (ok0 && ok1) {
        const auto& a = queue[0].top();
        const auto& b = queue[1].top();
        from = a.gain != b.gain ? (a.gain > b.gain ? 0 : 1) : (rng.bernoulli(0.5) ? 0 : 1);
      } else {
        from = ok0 ? 0 : 1;
      }

      const NodeID v = queue[from].top().node;
      queue[from].pop();
      side[v] = static_cast<std::uint8_t>(1 - from);
      balance.move(g.vertex_weight(v), from);
      cut -= gain[v];
      gain[v] = -gain[v];
      locked[v] = true;
      log.push_back(v);
      for (const Neighbor& e : g.neighbors(v)) {
        const NodeID u = e.node;
        gain[u] += side[u] == side[v] ? -2 * e.weight : 2 * e.weight;
        if (!locked[u]) queue[side[u]].push({gain[u], static_cast<std::uint32_t>(rng.next()), u});
      }

      const auto state = std::make_pair(balance.violation(t), cut);
      if (state < best) {
        best = state;
        best_len = log.size();
        since_best = 0;
      } else if (++since_best > patience) {
        break;
      }
    }

    for (std::size_t i = log.size(); i > best_len; --i) {
      const NodeID v = log[i - 1];
      const int from = side[v];
      side[v] = static_cast<std::uint8_t>(1 - from);
      balance.move(g.vertex_weight(v), from);
      cut += move_gain(g, side, v);
    }
    if (best_len == 0) break;
  }
}

// Greedy graph growing: side 0 starts empty and absorbs the frontier vertex
// with the strongest pull until it reaches its target weight.
Sides grow_bisection(const Graph& g, const BisectionTarget& t, Rng& rng) {
  const NodeID n = g.num_nodes();
  Sides side(n, 1);
  std::vector<EdgeWeight> pull(n);
  for (NodeID v = 0; v < n; ++v) {
    pull[v] = 0;
    for (const Neighbor& e : g.neighbors(v)) pull[v] -= e.weight;
  }
  std::vector<NodeID> restart(n);
  std::iota(restart.begin(), restart.end(), NodeID{0});
  rng.shuffle(std::span<NodeID>(restart));
  std::size_t restart_pos = 0;

  std::priority_queue<QueueEntry> frontier;
  NodeWeight weight0 = 0;
  NodeID count0 = 0;
  const NodeID max_count0 = n - std::min(n, t.min_count[1]);
  while (weight0 < t.target0 && count0 < max_count0) {
    NodeID pick = n;
    while (!frontier.empty()) {
      const QueueEntry top = frontier.top();
      frontier.pop();
      if (side[top.node] == 1 && pull[top.node] == top.gain &&
          weight0 + g.vertex_weight(top.node) <= t.max_weight[0]) {
        pick = top.node;
        break;
      }
    }
    while (pick == n && restart_pos < n) {
      const NodeID v = restart[restart_pos++];
      if (side[v] == 1 && weight0 + g.vertex_weight(v) <= t.max_weight[0]) pick = v;
    }
    if (pick == n) break;
    side[pick] = 0;
    weight0 += g.vertex_weight(pick);
    ++count0;
    for (const Neighbor& e : g.neighbors(pick)) {
      if (side[e.node] == 1) {
        pull[e.node] += 2 * e.weight;
        frontier.push({pull[e.node], static_cast<std::uint32_t>(rng.next()), e.node});
      }
    }
  }
  return side;
}

Sides multilevel_bisect(const Graph& g, const BisectionTarget& t, Rng& rng) {
  std::vector<CoarseningLevel> levels;
  const NodeWeight cluster_bound =
      std::max<NodeWeight>(1, std::min(t.max_weight[0], t.max_weight[1]) / 20);
  auto graph_at = [&](std::size_t i) -> const Graph& { return i == 0 ? g : levels[i - 1].coarse; };

  while (graph_at(levels.size()).num_nodes() > kCoarsestSize) {
    const Graph& current = graph_at(levels.size());
    const Clustering c = sclp(current, cluster_bound, kCoarseningRounds, rng);
    const NodeID n = current.num_nodes();
    if (static_cast<double>(n - c.num_clusters()) < 0.05 * n) break;
    levels.push_back(contract(current, c));
  }

  const Graph& coarsest = graph_at(levels.size());
  // Count bounds only bind on the input graph; coarse counts are lower bounds.
  BisectionTarget coarse_target = t;
  if (!levels.empty()) {
    coarse_target.min_count[0] = std::min<NodeID>(t.min_count[0], 1);
    coarse_target.min_count[1] = std::min<NodeID>(t.min_count[1], 1);
  }
  Sides best;
  std::pair<NodeWeight, EdgeWeight> best_score{0, 0};
  for (int attempt = 0; attempt < kInitialAttempts; ++attempt) {
    Sides side = grow_bisection(coarsest, coarse_target, rng);
    fm_refine(coarsest, side, coarse_target, rng);
    const auto score =
        std::make_pair(Balance(coarsest, side).violation(coarse_target), cut_of(coarsest, side));
    if (best.empty() || score < best_score) {
      best = std::move(side);
      best_score = score;
    }
  }

  for (std::size_t i = levels.size(); i > 0; --i) {
    const auto& map = levels[i - 1].map;
    Sides fine(map.size());
    for (std::size_t v = 0; v < map.size(); ++v) fine[v] = best[map[v]];
    best = std::move(fine);
    fm_refine(graph_at(i - 1), best, i == 1 ? t : coarse_target, rng);
  }
  return best;
}

void recursive_partition(const Graph& g, std::span<const NodeID> nodes, ClusterID k,
                         ClusterID first_block, NodeWeight block_bound,
                         std::vector<ClusterID>& assignment, Rng& rng) {
  if (k == 1) {
    for (NodeID v : nodes) assignment[v] = first_block;
    return;
  }
  const Graph sub = induced_subgraph(g, nodes);
  const ClusterID k0 = k / 2;
  const ClusterID k1 = k - k0;
  const NodeWeight total = sub.total_vertex_weight();
  BisectionTarget t{};
  t.max_weight[0] = static_cast<NodeWeight>(k0) * block_bound;
  t.max_weight[1] = static_cast<NodeWeight>(k1) * block_bound;
  t.target0 = std::min(t.max_weight[0], (total * k0 + k / 2) / k);
  t.min_count[0] = k0;
  t.min_count[1] = k1;
  const Sides side = multilevel_bisect(sub, t, rng);

  std::vector<NodeID> part[2];
  for (NodeID i = 0; i < sub.num_nodes(); ++i) part[side[i]].push_back(nodes[i]);
  recursive_partition(g, part[0], k0, first_block, block_bound, assignment, rng);
  recursive_partition(g, part[1], k1, first_block + k0, block_bound, assignment, rng);
}

}  // namespace

NodeWeight max_block_weight(NodeWeight total, ClusterID k, double epsilon) {
  const NodeWeight per_block = (total + k - 1) / k;
  return static_cast<NodeWeight>(std::floor((1.0 + epsilon) * static_cast<double>(per_block) + 1e-9));
}

EdgeWeight edge_cut(const Graph& g, const Clustering& c) {
  EdgeWeight twice = 0;
  for (NodeID u = 0; u < g.num_nodes(); ++u) {
    for (const Neighbor& e : g.neighbors(u)) {
      if (c[u] != c[e.node]) twice += e.weight;
    }
  }
  return twice / 2;
}

Clustering partition(const Graph& g, const PartitionParams& params) {
  const NodeID n = g.num_nodes();
  if (params.k == 0 || params.k > n) {
    throw Error("partition: k = " + std::to_string(params.k) + " is infeasible for " +
                std::to_string(n) + " vertices");
  }
  if (!(params.epsilon >= 0.0 && params.epsilon <= 1.0)) {
    throw Error("partition: imbalance must lie in [0, 1]");
  }
  Rng rng(params.seed);
  const NodeWeight bound = max_block_weight(g.total_vertex_weight(), params.k, params.epsilon);
  std::vector<ClusterID> assignment(n, 0);
  std::vector<NodeID> all(n);
  std::iota(all.begin(), all.end(), NodeID{0});
  recursive_partition(g, all, params.k, 0, bound, assignment, rng);

  std::vector<NodeWeight> weight(params.k, 0);
  std::vector<NodeID> count(params.k, 0);
  for (NodeID v = 0; v < n; ++v) {
    weight[assignment[v]] += g.vertex_weight(v);
    ++count[assignment[v]];
  }
  for (ClusterID b = 0; b < params.k; ++b) {
    if (count[b] == 0 || weight[b] > bound) {
      throw Error("partition: vertex weights admit no block assignment within L_max = " +
                  std::to_string(bound));
    }
  }
  return Clustering(std::move(assignment));
}

std::optional<Clustering> bisect_cluster(const Graph& g, const Clustering& c, ClusterID cluster,
                                         std::uint64_t seed) {
  if (c.size() != g.num_nodes()) throw Error("bisect: clustering does not match graph");
  if (cluster >= c.num_clusters()) throw Error("bisect: no such cluster");
  std::vector<NodeID> members;
  for (NodeID v = 0; v < g.num_nodes(); ++v) {
    if (c[v] == cluster) members.push_back(v);
  }
  if (members.size() < 2) return std::nullopt;

  Rng rng(seed);
  const Graph sub = induced_subgraph(g, members);
  const NodeWeight total = sub.total_vertex_weight();
  // ceil((1 + 0.03) / 2 * W) in exact integer arithmetic.
  const NodeWeight bound = (103 * total + 199) / 200;
  BisectionTarget t{};
  t.max_weight[0] = t.max_weight[1] = bound;
  t.target0 = total / 2;
  t.min_count[0] = t.min_count[1] = 1;
  const Sides side = multilevel_bisect(sub, t, rng);

  std::vector<ClusterID> assignment(c.assignment().begin(), c.assignment().end());
  const ClusterID new_id = c.num_clusters();
  for (NodeID i = 0; i < sub.num_nodes(); ++i) {
    if (side[i] == 1) assignment[members[i]] = new_id;
  }
  return Clustering(std::move(assignment));
}

}  // namespace memclust
