#include "memclust/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_map>

#include "memclust/convergence.hpp"

namespace memclust {

bool ConvergenceLog::record_at(double elapsed_seconds, double modularity) {
  if (!events_.empty()) {
    if (modularity <= events_.back().modularity) return false;
    elapsed_seconds = std::max(elapsed_seconds, events_.back().elapsed_seconds);
  }
  events_.push_back({elapsed_seconds, seed_, modularity});
  return true;
}

std::vector<ConvergenceEvent> merge_improvements(std::span<const ConvergenceLog> logs,
                                                 std::uint64_t seed) {
  struct Tagged {
    ConvergenceEvent event;
    std::size_t log;
    std::size_t index;
  };
  std::vector<Tagged> all;
  for (std::size_t l = 0; l < logs.size(); ++l) {
    const auto start_offset =
        std::chrono::duration<double>(logs[l].start() - logs.front().start()).count();
    const auto& events = logs[l].events();
    for (std::size_t i = 0; i < events.size(); ++i) {
      ConvergenceEvent e = events[i];
      e.elapsed_seconds += start_offset;
      all.push_back({e, l, i});
    }
  }
  std::sort(all.begin(), all.end(), [](const Tagged& a, const Tagged& b) {
    if (a.event.elapsed_seconds != b.event.elapsed_seconds) {
      return a.event.elapsed_seconds < b.event.elapsed_seconds;
    }
    return std::tie(a.log, a.index) < std::tie(b.log, b.index);
  });
  std::vector<ConvergenceEvent> merged;
  for (const Tagged& t : all) {
    if (merged.empty() || t.event.modularity > merged.back().modularity) {
      merged.push_back({std::max(0.0, t.event.elapsed_seconds), seed, t.event.modularity});
    }
  }
  return merged;
}

std::vector<CurvePoint> event_average(const std::vector<std::vector<ConvergenceEvent>>& runs) {
  if (runs.empty()) throw Error("event_average: no runs");
  const double r = static_cast<double>(runs.size());
  std::vector<double> current(runs.size());
  double first_time = 0.0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].empty()) throw Error("event_average: run " + std::to_string(i) + " is empty");
    first_time += runs[i].front().elapsed_seconds;
    current[i] = runs[i].front().modularity;
  }

  struct Pending {
    double time;
    std::size_t run;
    std::size_t index;
  };
  std::vector<Pending> rest;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (std::size_t j = 1; j < runs[i].size(); ++j) rest.push_back({runs[i][j].elapsed_seconds, i, j});
  }
  std::sort(rest.begin(), rest.end(), [](const Pending& a, const Pending& b) {
    return std::tie(a.time, a.run, a.index) < std::tie(b.time, b.run, b.index);
  });

  std::vector<CurvePoint> curve;
  curve.reserve(rest.size() + 1);
  auto mean = [&] { return std::accumulate(current.begin(), current.end(), 0.0) / r; };
  curve.push_back({first_time / r, mean()});
  for (const Pending& p : rest) {
    current[p.run] = runs[p.run][p.index].modularity;
    curve.push_back({p.time, mean()});
  }
  return curve;
}

std::vector<std::vector<ConvergenceEvent>> split_by_seed(std::span<const ConvergenceEvent> events) {
  std::vector<std::vector<ConvergenceEvent>> runs;
  std::unordered_map<std::uint64_t, std::size_t> slot;
  for (const auto& e : events) {
    auto [it, inserted] = slot.try_emplace(e.seed, runs.size());
    if (inserted) runs.emplace_back();
    runs[it->second].push_back(e);
  }
  return runs;
}

namespace {

std::string format_double(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

}  // namespace

void write_convergence_csv(std::ostream& out, std::span<const ConvergenceEvent> events) {
  out << "elapsed_seconds,seed,modularity\n";
  for (const auto& e : events) {
    out << format_double(e.elapsed_seconds, 6) << ',' << e.seed << ','
        << format_double(e.modularity, 12)
        << '\n';
  }
}

std::vector<ConvergenceEvent> read_convergence_csv(std::istream& in) {
  std::vector<ConvergenceEvent> events;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("elapsed_seconds", 0) == 0) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) throw ParseError(lineno, "expected three comma-separated fields");
    try {
      ConvergenceEvent e;
      e.elapsed_seconds = std::stod(line.substr(0, c1));
      e.seed = std::stoull(line.substr(c1 + 1, c2 - c1 - 1));
      e.modularity = std::stod(line.substr(c2 + 1));
      events.push_back(e);
    } catch (const std::exception&) {
      throw ParseError(lineno, "malformed number");
    }
  }
  return events;
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve) {
  out << "elapsed_seconds,mean_modularity\n";
  for (const auto& p : curve) {
    out << format_double(p.elapsed_seconds, 6) << ',' << format_double(p.mean_modularity, 12)
        << '\n';
  }
}

Clustering volume_balanced_clustering(const Graph& g, ClusterID k) {
  const NodeID n = g.num_nodes();
  if (k == 0 || k > n) throw Error("bound: k must lie in [1, n]");
  std::vector<NodeID> order(n);
  std::iota(order.begin(), order.end(), NodeID{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeID a, NodeID b) {
    return g.weighted_degree(a) > g.weighted_degree(b);
  });
  // Min-heap on (volume, cluster ID).
  using Slot = std::pair<EdgeWeight, ClusterID>;
  std::priority_queue<Slot, std::vector<Slot>, std::greater<>> smallest;
  for (ClusterID c = 0; c < k; ++c) smallest.push({0, c});
  std::vector<ClusterID> labels(n);
  for (NodeID v : order) {
    auto [volume, c] = smallest.top();
    smallest.pop();
    labels[v] = c;
    smallest.push({volume + g.weighted_degree(v), c});
  }
  return Clustering::from_labels(labels);
}

double modularity_bound(const Graph& g, ClusterID k) {
  if (g.total_weight() <= 0) throw Error("bound undefined on a graph without edge weight");
  const Clustering c = volume_balanced_clustering(g, k);
  const auto m = static_cast<long double>(g.total_weight());
  long double squares = 0;
  for (EdgeWeight vol : cluster_volumes(g, c)) {
    squares += static_cast<long double>(vol) * static_cast<long double>(vol);
  }
  const double bound = static_cast<double>(1.0L - squares / (4.0L * m * m));
  // sum vol^2 >= (2m)^2 / k by Cauchy-Schwarz.
  if (bound > 1.0 - 1.0 / static_cast<double>(k) + 1e-12) {
    throw Error("bound: volume-balanced clustering beats the ideal bound");
  }
  return bound;
}

}  // namespace memclust
