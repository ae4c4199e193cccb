#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "memclust/channel.hpp"
#include "memclust/convergence.hpp"
#include "memclust/graph.hpp"
#include "memclust/memetic.hpp"
#include "memclust/rng.hpp"

namespace memclust {

enum class Transport { kInProcess, kProcess };

struct IslandConfig {
  std::size_t islands = 1;
  /// Wall-clock budget in seconds, initialization included.
  double time_limit = 60.0;
  /// Initialization gets time_limit / init_fraction.
  double init_fraction = 10.0;
  std::uint64_t seed = 0;
  /// Fixed number of evolution rounds per island. When set, the clock is
  /// never consulted and a single island is reproducible byte for byte.
  std::optional<std::size_t> rounds;
  /// Fixes the population size instead of estimating it from timing.
  std::optional<std::size_t> population_size;
  Transport transport = Transport::kInProcess;
};

/// Throws Error unless islands >= 1, time_limit > 0, init_fraction >= 1 and
/// any fixed population size lies in [1, Population::kMaxSize].
void validate(const IslandConfig& cfg);

/// S = clamp(round((time_limit / init_fraction) / seconds_per_individual), 3, 100).
std::size_t estimate_population_size(double seconds_per_individual, const IslandConfig& cfg);

/// 64-bit FNV-1a hash of a normalized clustering.
std::uint64_t fingerprint(const Clustering& c);

/// Rumor-spreading bookkeeping of one island: which peers have already been
/// sent the current best. A changed best makes every peer eligible again.
class GossipState {
 public:
  GossipState(std::size_t self, std::size_t islands);

  /// One communication step: up to ceil(log2 p) rounds, each picking a
  /// uniformly random peer not yet served with the best `best_fingerprint`.
  /// Returns the chosen peers in order.
  std::vector<std::size_t> step(std::uint64_t best_fingerprint, Rng& rng);

  /// True when every peer has the current best.
  bool exhausted() const { return served_count_ + 1 >= served_.size(); }
  std::size_t rounds_per_step() const { return rounds_; }

 private:
  std::size_t self_;
  std::size_t rounds_;
  std::optional<std::uint64_t> best_;
  std::vector<bool> served_;
  std::size_t served_count_ = 0;
};

/// Wire format, host byte order: u64 n, n u32 cluster IDs, f64 fitness.
Message serialize(const Individual& ind);

/// Decodes and re-scores a message. Returns nullopt for malformed payloads
/// or a vertex count that does not match g; the transmitted fitness is not
/// trusted.
std::optional<Individual> deserialize(const Graph& g, std::span<const std::byte> payload);

/// Inserts an incoming individual with the eviction rule.
bool receive_and_merge(Population& pop, Individual incoming);

struct IslandReport {
  std::size_t island = 0;
  bool failed = false;
  std::size_t population_size = 0;
  std::size_t rounds = 0;
  double best_fitness = 0.0;
};

struct RunResult {
  Individual best;
  /// Improvements of the overall best across islands, labeled with cfg.seed.
  std::vector<ConvergenceEvent> events;
  std::vector<IslandReport> islands;
};

/// Runs cfg.islands asynchronous islands, each building its own population
/// and evolving it while exchanging best individuals by rumor spreading.
/// Threads share one process for Transport::kInProcess; kProcess forks one
/// process per island. A failing island is reported and ignored. Throws
/// Error if every island fails.
RunResult run(const Graph& g, const IslandConfig& cfg, const OperatorConfig& ops);

}  // namespace memclust
