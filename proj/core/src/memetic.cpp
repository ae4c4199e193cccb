#include "memclust/memetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "memclust/coarsening.hpp"
#include "memclust/louvain.hpp"
#include "memclust/partition.hpp"

namespace memclust {

namespace {

const Individual& better_of(const Individual& a, const Individual& b) {
  if (a.fitness != b.fitness) return a.fitness > b.fitness ? a : b;
  const auto x = a.clustering.assignment();
  const auto y = b.clustering.assignment();
  return std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end()) ? b : a;
}

NodeWeight draw_size_bound(const Graph& g, const OperatorConfig& cfg, Rng& rng) {
  const auto n = static_cast<NodeWeight>(g.num_nodes());
  const auto lo = std::clamp<NodeWeight>(
      static_cast<NodeWeight>(std::ceil(cfg.size_bound_min_fraction * static_cast<double>(n))), 1,
      std::max<NodeWeight>(n, 1));
  return rng.uniform_int<NodeWeight>(lo, std::max(lo, n));
}

void check_floor(const Individual& offspring, double floor, const char* op) {
  if (offspring.fitness < floor) {
    throw std::logic_error(std::string(op) + ": offspring fitness " +
                           std::to_string(offspring.fitness) + " below guaranteed " +
                           std::to_string(floor));
  }
}

// Louvain on the contracted overlay of `start` and `other`, beginning from
// `start`. The offspring is at least as fit as `start`.
Individual recombine_from(const Graph& g, const Individual& start, const Individual& other,
                          Rng& rng) {
  const Clustering blocks = overlay(g, start.clustering, other.clustering);
  const CoarseningLevel level = contract(g, blocks);
  const Clustering initial = restrict_to_coarse(level, start.clustering);
  LouvainOptions options;
  options.initial = &initial;
  Individual offspring = evaluate(g, project(level, louvain_multilevel(level.coarse, options, rng)));
  check_floor(offspring, start.fitness, "apply-input recombination");
  return offspring;
}

}  // namespace

double score(const Graph& g, const Clustering& c) { return modularity(g, c); }

Individual evaluate(const Graph& g, Clustering c) {
  Individual ind;
  ind.clustering = c.normalized();
  ind.fitness = score(g, ind.clustering);
  ind.cuts = cut_edges(g, ind.clustering);
  return ind;
}

Population::Population(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0 || capacity > kMaxSize) {
    throw Error("population capacity must lie in [1, " + std::to_string(kMaxSize) + "]");
  }
  individuals_.reserve(capacity);
}

void Population::add(Individual individual) {
  if (full()) throw Error("population is full");
  individuals_.push_back(std::move(individual));
}

void Population::replace(std::size_t index, Individual individual) {
  individuals_.at(index) = std::move(individual);
}

std::size_t Population::best_index() const {
  if (individuals_.empty()) throw Error("empty population");
  std::size_t best = 0;
  for (std::size_t i = 1; i < individuals_.size(); ++i) {
    if (individuals_[i].fitness > individuals_[best].fitness) best = i;
  }
  return best;
}

Individual create_individual(const Graph& g, const OperatorConfig& cfg, Rng& rng,
                             std::optional<int> sclp_levels) {
  LouvainOptions options;
  options.sclp_levels = sclp_levels ? *sclp_levels : rng.uniform_int(0, cfg.sclp_levels_max);
  options.size_bound = draw_size_bound(g, cfg, rng);
  options.sclp_rounds = cfg.sclp_rounds;
  return evaluate(g, louvain_multilevel(g, options, rng));
}

const Individual& tournament_select(const Population& pop, Rng& rng) {
  if (pop.size() == 0) throw Error("tournament on an empty population");
  if (pop.size() == 1) return pop[0];
  const std::size_t i = rng.uniform_int<std::size_t>(0, pop.size() - 1);
  std::size_t j = rng.uniform_int<std::size_t>(0, pop.size() - 2);
  if (j >= i) ++j;
  const Individual& a = pop[i];
  const Individual& b = pop[j];
  if (a.fitness != b.fitness) return a.fitness > b.fitness ? a : b;
  return rng.bernoulli(0.5) ? a : b;
}

bool insert_with_eviction(Population& pop, Individual offspring) {
  std::optional<std::size_t> victim;
  std::size_t victim_distance = 0;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    const Individual& member = pop[i];
    if (member.fitness > offspring.fitness) continue;
    const std::size_t d = distance(member.cuts, offspring.cuts);
    if (!victim || d < victim_distance ||
        (d == victim_distance && member.fitness < pop[*victim].fitness)) {
      victim = i;
      victim_distance = d;
    }
  }
  if (!victim) return false;
  pop.replace(*victim, std::move(offspring));
  return true;
}

Individual flat_recombine(const Graph& g, const Individual& p1, const Individual& p2, Rng& rng) {
  const Clustering blocks = overlay(g, p1.clustering, p2.clustering);
  const CoarseningLevel level = contract(g, blocks);
  return evaluate(g, project(level, louvain_multilevel(level.coarse, {}, rng)));
}

Individual recombine_apply_input(const Graph& g, const Individual& p1, const Individual& p2,
                                 Rng& rng) {
  const Individual& start = better_of(p1, p2);
  return recombine_from(g, start, &start == &p1 ? p2 : p1, rng);
}

Individual recombine_with_fresh_partner(const Graph& g, const Individual& p1, PartnerSource source,
                                        const OperatorConfig& cfg, Rng& rng) {
  const NodeID n = g.num_nodes();
  Clustering partner;
  if (source == PartnerSource::kLabelPropagation) {
    partner = sclp(g, draw_size_bound(g, cfg, rng), cfg.sclp_rounds, rng);
  } else if (n >= 2) {
    PartitionParams params;
    const ClusterID k_max = std::min<ClusterID>(cfg.partition_k_max, n);
    const ClusterID k_min = std::min(cfg.partition_k_min, k_max);
    params.k = rng.uniform_int<ClusterID>(k_min, k_max);
    params.epsilon = rng.uniform_real(cfg.partition_epsilon_min, cfg.partition_epsilon_max);
    params.seed = rng.next();
    partner = partition(g, params);
  } else {
    partner = p1.clustering;
  }
  return recombine_from(g, p1, evaluate(g, std::move(partner)), rng);
}

Individual multilevel_recombine(const Graph& g, const Individual& p1, const Individual& p2,
                                Rng& rng,
                                const std::function<void(const Clustering&)>& on_contract) {
  const Individual& start = better_of(p1, p2);
  const Clustering blocks = overlay(g, p1.clustering, p2.clustering);
  LouvainOptions options;
  options.components = blocks.assignment();
  options.constrain_uncoarsening = false;
  options.coarsest_seed = &start.clustering;
  options.on_contract = on_contract;
  Individual offspring = evaluate(g, louvain_multilevel(g, options, rng));
  check_floor(offspring, start.fitness, "multi-level recombination");
  return offspring;
}

std::size_t split_count(double split_probability, ClusterID k) {
  if (k == 0) return 0;
  const double raw = split_probability * static_cast<double>(k);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw - 1e-9)));
}

Individual mutate(const Graph& g, const Individual& parent, const OperatorConfig& cfg, Rng& rng) {
  const Clustering& c = parent.clustering;
  const double ps = rng.uniform_real(cfg.split_probability_min, cfg.split_probability_max);
  std::vector<NodeID> cluster_size(c.num_clusters(), 0);
  for (NodeID v = 0; v < c.size(); ++v) ++cluster_size[c[v]];
  std::vector<ClusterID> splittable;
  for (ClusterID id = 0; id < c.num_clusters(); ++id) {
    if (cluster_size[id] >= 2) splittable.push_back(id);
  }
  if (splittable.empty()) return parent;

  rng.shuffle(std::span<ClusterID>(splittable));
  splittable.resize(std::min(splittable.size(), split_count(ps, c.num_clusters())));
  Clustering mutant = c;
  for (ClusterID id : splittable) {
    // Splitting only appends new IDs, so the original IDs stay valid.
    mutant = bisect_cluster(g, mutant, id, rng.next()).value();
  }
  return evaluate(g, std::move(mutant));
}

Individual mutate_and_recombine(const Graph& g, const Population& pop, const OperatorConfig& cfg,
                                Rng& rng) {
  const Individual& a = tournament_select(pop, rng);
  const Individual& b = tournament_select(pop, rng);
  const Individual ma = mutate(g, a, cfg, rng);
  const Individual mb = mutate(g, b, cfg, rng);
  return multilevel_recombine(g, ma, mb, rng);
}

std::string_view operator_name(Operator op) {
  switch (op) {
    case Operator::kMutation: return "mutation";
    case Operator::kFlat: return "flat";
    case Operator::kApplyInput: return "apply-input";
    case Operator::kLabelPropagationPartner: return "sclp-partner";
    case Operator::kPartitionPartner: return "partition-partner";
    case Operator::kMultilevel: return "multilevel";
  }
  return "unknown";
}

Operator choose_operator(const OperatorConfig& cfg, Rng& rng) {
  if (rng.bernoulli(cfg.mutation_ratio)) return Operator::kMutation;
  static constexpr std::array<Operator, 5> kRecombine = {
      Operator::kFlat, Operator::kApplyInput, Operator::kLabelPropagationPartner,
      Operator::kPartitionPartner, Operator::kMultilevel};
  return kRecombine[rng.uniform_int<std::size_t>(0, kRecombine.size() - 1)];
}

Offspring apply_operator(Operator op, const Graph& g, const Population& pop,
                         const OperatorConfig& cfg, Rng& rng) {
  switch (op) {
    case Operator::kMutation: {
      // The floor here is the better mutant, which multilevel_recombine
      // already asserts internally.
      return {mutate_and_recombine(g, pop, cfg, rng), std::nullopt};
    }
    case Operator::kFlat: {
      const Individual& a = tournament_select(pop, rng);
      const Individual& b = tournament_select(pop, rng);
      return {flat_recombine(g, a, b, rng), std::nullopt};
    }
    case Operator::kApplyInput: {
      const Individual& a = tournament_select(pop, rng);
      const Individual& b = tournament_select(pop, rng);
      return {recombine_apply_input(g, a, b, rng), std::max(a.fitness, b.fitness)};
    }
    case Operator::kLabelPropagationPartner:
    case Operator::kPartitionPartner: {
      const Individual& a = tournament_select(pop, rng);
      const auto source = op == Operator::kPartitionPartner ? PartnerSource::kPartition
                                                            : PartnerSource::kLabelPropagation;
      return {recombine_with_fresh_partner(g, a, source, cfg, rng), a.fitness};
    }
    case Operator::kMultilevel: {
      const Individual& a = tournament_select(pop, rng);
      const Individual& b = tournament_select(pop, rng);
      return {multilevel_recombine(g, a, b, rng), std::max(a.fitness, b.fitness)};
    }
  }
  throw std::logic_error("unknown operator");
}

Operator evolution_round(const Graph& g, Population& pop, const OperatorConfig& cfg, Rng& rng,
                         ConvergenceLog* log) {
  const double best_before = pop.best().fitness;
  const Operator op = choose_operator(cfg, rng);
  Offspring offspring = apply_operator(op, g, pop, cfg, rng);
  if (offspring.floor) check_floor(offspring.individual, *offspring.floor, operator_name(op).data());
  insert_with_eviction(pop, std::move(offspring.individual));
  const double best_after = pop.best().fitness;
  if (log && best_after > best_before) log->record(best_after);
  return op;
}

}  // namespace memclust
