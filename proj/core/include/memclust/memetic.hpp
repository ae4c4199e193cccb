#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "memclust/clustering.hpp"
#include "memclust/convergence.hpp"
#include "memclust/graph.hpp"
#include "memclust/rng.hpp"

namespace memclust {

/// A scored clustering. Fitness and cut edges always describe `clustering`;
/// build instances through evaluate() so that stays true.
struct Individual {
  Clustering clustering;
  double fitness = 0.0;
  CutEdgeSet cuts;
};

/// Objective used throughout the evolutionary loop. Operators read fitness
/// only through this function.
double score(const Graph& g, const Clustering& c);

/// Scores `c`, records its cut edges and normalizes it.
Individual evaluate(const Graph& g, Clustering c);

/// Parameter ranges. Every draw is uniform over its range.
struct OperatorConfig {
  double mutation_ratio = 0.1;
  double split_probability_min = 0.01;
  double split_probability_max = 0.1;
  int sclp_levels_max = 4;
  /// U is drawn from [size_bound_min_fraction * n, n].
  double size_bound_min_fraction = 0.1;
  int sclp_rounds = 10;
  ClusterID partition_k_min = 2;
  ClusterID partition_k_max = 64;
  double partition_epsilon_min = 0.03;
  double partition_epsilon_max = 0.5;
};

/// Fixed-capacity pool of individuals with replace-only insertion.
class Population {
 public:
  static constexpr std::size_t kMinSize = 3;
  static constexpr std::size_t kMaxSize = 100;

  explicit Population(std::size_t capacity);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return individuals_.size(); }
  bool full() const { return individuals_.size() >= capacity_; }
  const Individual& operator[](std::size_t i) const { return individuals_[i]; }
  const std::vector<Individual>& individuals() const { return individuals_; }

  /// Appends while filling up during initialization.
  void add(Individual individual);
  void replace(std::size_t index, Individual individual);

  std::size_t best_index() const;
  const Individual& best() const { return individuals_[best_index()]; }

 private:
  std::size_t capacity_;
  std::vector<Individual> individuals_;
};

/// Draws a sclp level count and size bound, then runs multi-level Louvain.
/// `sclp_levels` forces the level count when given.
Individual create_individual(const Graph& g, const OperatorConfig& cfg, Rng& rng,
                             std::optional<int> sclp_levels = std::nullopt);

/// Fitter of two distinct uniformly drawn members; equal fitness picks
/// either with probability 1/2.
const Individual& tournament_select(const Population& pop, Rng& rng);

/// Eviction rule. Among members no fitter than the offspring, replaces the one
/// whose cut-edge set is closest to the offspring's (ties: lower fitness, then
/// lower index). Returns false and leaves the population untouched when every
/// member is fitter.
bool insert_with_eviction(Population& pop, Individual offspring);

/// Contracts the overlay of both parents and clusters the contracted graph
/// with Louvain from singletons. No guarantee relative to the parents.
Individual flat_recombine(const Graph& g, const Individual& p1, const Individual& p2, Rng& rng);

/// Like flat_recombine, but Louvain on the contracted overlay starts from the
/// better parent. Offspring fitness is at least max(p1, p2).
Individual recombine_apply_input(const Graph& g, const Individual& p1, const Individual& p2,
                                 Rng& rng);

enum class PartnerSource { kLabelPropagation, kPartition };

/// Builds the second parent on the spot (label propagation or a balanced
/// partition with drawn parameters) and recombines it with `p1` as the
/// starting clustering. Offspring fitness is at least p1's.
Individual recombine_with_fresh_partner(const Graph& g, const Individual& p1, PartnerSource source,
                                        const OperatorConfig& cfg, Rng& rng);

/// Multi-level Louvain that never contracts an edge cut by either parent;
/// the better parent is installed on the coarsest graph and refined during
/// uncoarsening. Offspring fitness is at least max(p1, p2). `on_contract`
/// sees every coarsening level projected onto g.
Individual multilevel_recombine(const Graph& g, const Individual& p1, const Individual& p2,
                                Rng& rng,
                                const std::function<void(const Clustering&)>& on_contract = {});

/// Splits ceil(p_s * k) distinct non-singleton clusters of `parent` (all of
/// them if there are fewer), with p_s drawn from the configured range.
Individual mutate(const Graph& g, const Individual& parent, const OperatorConfig& cfg, Rng& rng);

/// Number of clusters a mutation splits for split probability p_s.
std::size_t split_count(double split_probability, ClusterID k);

/// Tournament-selects two members, mutates both and feeds the mutants to
/// multilevel_recombine.
Individual mutate_and_recombine(const Graph& g, const Population& pop, const OperatorConfig& cfg,
                                Rng& rng);

enum class Operator {
  kMutation,
  kFlat,
  kApplyInput,
  kLabelPropagationPartner,
  kPartitionPartner,
  kMultilevel,
};
inline constexpr std::size_t kOperatorCount = 6;
std::string_view operator_name(Operator op);

/// Mutation with probability mutation_ratio, otherwise one of the five
/// recombination operators uniformly.
Operator choose_operator(const OperatorConfig& cfg, Rng& rng);

/// Applies one operator to the population and returns the offspring.
/// The floor is the fitness the offspring is guaranteed to reach, if any.
struct Offspring {
  Individual individual;
  std::optional<double> floor;
};
Offspring apply_operator(Operator op, const Graph& g, const Population& pop,
                         const OperatorConfig& cfg, Rng& rng);

/// One generation: choose an operator, produce one offspring, insert it with
/// eviction and log an event if the population best improved.
Operator evolution_round(const Graph& g, Population& pop, const OperatorConfig& cfg, Rng& rng,
                         ConvergenceLog* log);

}  // namespace memclust
