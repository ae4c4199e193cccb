#include "memclust/island.hpp"

#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <bit>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <exception>
#include <thread>

namespace memclust {

using Clock = ConvergenceLog::Clock;

void validate(const IslandConfig& cfg) {
  if (cfg.islands == 0) throw Error("need at least one island");
  if (!(cfg.time_limit > 0.0)) throw Error("time limit must be positive");
  if (!(cfg.init_fraction >= 1.0)) throw Error("initialization fraction must be at least 1");
  if (cfg.population_size &&
      (*cfg.population_size == 0 || *cfg.population_size > Population::kMaxSize)) {
    throw Error("population size must lie in [1, " + std::to_string(Population::kMaxSize) + "]");
  }
}

std::size_t estimate_population_size(double seconds_per_individual, const IslandConfig& cfg) {
  constexpr auto lo = static_cast<double>(Population::kMinSize);
  constexpr auto hi = static_cast<double>(Population::kMaxSize);
  if (!(seconds_per_individual > 0.0)) return Population::kMaxSize;
  const double s = std::round((cfg.time_limit / cfg.init_fraction) / seconds_per_individual);
  return static_cast<std::size_t>(std::clamp(s, lo, hi));
}

std::uint64_t fingerprint(const Clustering& c) {
  const Clustering normalized = c.normalized();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (ClusterID id : normalized.assignment()) {
    for (int shift = 0; shift < 32; shift += 8) {
      h ^= (id >> shift) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

GossipState::GossipState(std::size_t self, std::size_t islands)
    : self_(self),
      rounds_(islands <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(islands - 1))),
      served_(islands, false) {
  if (self >= islands) throw Error("gossip: island index out of range");
}

std::vector<std::size_t> GossipState::step(std::uint64_t best_fingerprint, Rng& rng) {
  if (best_ != best_fingerprint) {
    best_ = best_fingerprint;
    std::fill(served_.begin(), served_.end(), false);
    served_count_ = 0;
  }
  std::vector<std::size_t> targets;
  for (std::size_t round = 0; round < rounds_ && !exhausted(); ++round) {
    const std::size_t eligible = served_.size() - 1 - served_count_;
    auto pick = rng.uniform_int<std::size_t>(0, eligible - 1);
    for (std::size_t peer = 0; peer < served_.size(); ++peer) {
      if (peer == self_ || served_[peer]) continue;
      if (pick-- == 0) {
        served_[peer] = true;
        ++served_count_;
        targets.push_back(peer);
        break;
      }
    }
  }
  return targets;
}

namespace {

template <typename T>
void put(Message& out, const T& value) {
  const auto* p = reinterpret_cast<const std::byte*>(&value);
  out.insert(out.end(), p, p + sizeof(T));
}

template <typename T>
bool take(std::span<const std::byte>& in, T& value) {
  if (in.size() < sizeof(T)) return false;
  std::memcpy(&value, in.data(), sizeof(T));
  in = in.subspan(sizeof(T));
  return true;
}

}  // namespace

Message serialize(const Individual& ind) {
  Message out;
  const auto assignment = ind.clustering.assignment();
  out.reserve(sizeof(std::uint64_t) + assignment.size() * sizeof(ClusterID) + sizeof(double));
  put(out, static_cast<std::uint64_t>(assignment.size()));
  for (ClusterID id : assignment) put(out, id);
  put(out, ind.fitness);
  return out;
}

std::optional<Individual> deserialize(const Graph& g, std::span<const std::byte> payload) {
  std::uint64_t n = 0;
  if (!take(payload, n) || n != g.num_nodes()) return std::nullopt;
  if (payload.size() != n * sizeof(ClusterID) + sizeof(double)) return std::nullopt;
  std::vector<ClusterID> labels(n);
  for (auto& id : labels) take(payload, id);
  return evaluate(g, Clustering::from_labels(labels));
}

bool receive_and_merge(Population& pop, Individual incoming) {
  return insert_with_eviction(pop, std::move(incoming));
}

namespace {

struct IslandOutcome {
  Individual best;
  std::vector<ConvergenceEvent> events;
  IslandReport report;
};

std::uint64_t island_seed(std::uint64_t base, std::size_t rank) {
  return base + 0x9e3779b97f4a7c15ULL * rank;
}

IslandOutcome run_island(const Graph& g, const IslandConfig& cfg, const OperatorConfig& ops,
                         std::size_t rank, Endpoint* endpoint, Clock::time_point start) {
  Rng rng(island_seed(cfg.seed, rank));
  ConvergenceLog log(cfg.seed, start);
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(cfg.time_limit));
  const bool by_clock = !cfg.rounds.has_value();
  auto out_of_time = [&] { return by_clock && Clock::now() >= deadline; };

  const auto first_started = Clock::now();
  Individual first = create_individual(g, ops, rng);
  const double seconds_per_individual =
      std::chrono::duration<double>(Clock::now() - first_started).count();
  const std::size_t size =
      cfg.population_size ? *cfg.population_size
                          : estimate_population_size(seconds_per_individual, cfg);

  Population pop(size);
  log.record(first.fitness);
  pop.add(std::move(first));
  while (!pop.full() && !out_of_time()) {
    pop.add(create_individual(g, ops, rng));
    log.record(pop.best().fitness);
  }

  const std::size_t p = cfg.islands;
  GossipState gossip(rank, p);
  const auto cadence = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(std::max(1.0, cfg.time_limit / 1000.0)));
  std::optional<std::uint64_t> announced;
  auto next_timer = Clock::now();

  auto communicate = [&] {
    while (auto message = endpoint->try_receive()) {
      if (auto incoming = deserialize(g, *message)) {
        receive_and_merge(pop, std::move(*incoming));
        log.record(pop.best().fitness);
      }
    }
    const Individual& best = pop.best();
    const std::uint64_t fp = fingerprint(best.clustering);
    const auto now = Clock::now();
    if (announced == fp && now < next_timer) return;
    announced = fp;
    next_timer = now + cadence;
    const auto targets = gossip.step(fp, rng);
    if (targets.empty()) return;
    const Message payload = serialize(best);
    for (std::size_t peer : targets) endpoint->send(peer, payload);
  };

  std::size_t rounds = 0;
  while (cfg.rounds ? rounds < *cfg.rounds : !out_of_time()) {
    if (p > 1) communicate();
    evolution_round(g, pop, ops, rng, &log);
    ++rounds;
  }
  if (p > 1) communicate();

  IslandOutcome outcome;
  outcome.best = pop.best();
  outcome.events = log.events();
  outcome.report = {rank, false, pop.capacity(), rounds, outcome.best.fitness};
  return outcome;
}

Message encode_outcome(const IslandOutcome& o) {
  Message out;
  const Message best = serialize(o.best);
  put(out, static_cast<std::uint64_t>(best.size()));
  out.insert(out.end(), best.begin(), best.end());
  put(out, static_cast<std::uint64_t>(o.report.population_size));
  put(out, static_cast<std::uint64_t>(o.report.rounds));
  put(out, static_cast<std::uint64_t>(o.events.size()));
  for (const auto& e : o.events) {
    put(out, e.elapsed_seconds);
    put(out, e.seed);
    put(out, e.modularity);
  }
  return out;
}

std::optional<IslandOutcome> decode_outcome(const Graph& g, std::span<const std::byte> in,
                                            std::size_t rank) {
  std::uint64_t len = 0;
  if (!take(in, len) || in.size() < len) return std::nullopt;
  auto best = deserialize(g, in.first(len));
  if (!best) return std::nullopt;
  in = in.subspan(len);
  IslandOutcome o;
  o.best = std::move(*best);
  std::uint64_t pop_size = 0, rounds = 0, count = 0;
  if (!take(in, pop_size) || !take(in, rounds) || !take(in, count)) return std::nullopt;
  for (std::uint64_t i = 0; i < count; ++i) {
    ConvergenceEvent e;
    if (!take(in, e.elapsed_seconds) || !take(in, e.seed) || !take(in, e.modularity)) {
      return std::nullopt;
    }
    o.events.push_back(e);
  }
  o.report = {rank, false, static_cast<std::size_t>(pop_size), static_cast<std::size_t>(rounds),
              o.best.fitness};
  return o;
}

bool write_all(int fd, std::span<const std::byte> data) {
  while (!data.empty()) {
    const ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    data = data.subspan(static_cast<std::size_t>(n));
  }
  return true;
}

Message read_all(int fd) {
  Message out;
  std::byte buffer[1 << 16];
  for (;;) {
    const ssize_t n = ::read(fd, buffer, sizeof buffer);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    out.insert(out.end(), buffer, buffer + n);
  }
  return out;
}

std::vector<std::optional<IslandOutcome>> run_threads(const Graph& g, const IslandConfig& cfg,
                                                      const OperatorConfig& ops,
                                                      Clock::time_point start) {
  InProcessNetwork network(cfg.islands);
  std::vector<std::optional<IslandOutcome>> outcomes(cfg.islands);
  auto body = [&](std::size_t rank) {
    try {
      auto endpoint = network.endpoint(rank);
      outcomes[rank] = run_island(g, cfg, ops, rank, endpoint.get(), start);
    } catch (const std::exception&) {
      outcomes[rank].reset();
    }
  };
  if (cfg.islands == 1) {
    body(0);
    return outcomes;
  }
  std::vector<std::thread> threads;
  for (std::size_t rank = 0; rank < cfg.islands; ++rank) threads.emplace_back(body, rank);
  for (auto& t : threads) t.join();
  return outcomes;
}

std::vector<std::optional<IslandOutcome>> run_processes(const Graph& g, const IslandConfig& cfg,
                                                        const OperatorConfig& ops,
                                                        Clock::time_point start) {
  SocketNetwork network(cfg.islands);
  std::vector<std::optional<IslandOutcome>> outcomes(cfg.islands);
  std::vector<pid_t> children(cfg.islands, -1);
  std::vector<int> result_fds(cfg.islands, -1);
  for (std::size_t rank = 0; rank < cfg.islands; ++rank) {
    int fds[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0) continue;
    const pid_t pid = ::fork();
    if (pid == 0) {
      ::close(fds[0]);
      int status = 1;
      try {
        auto endpoint = network.endpoint(rank);
        const Message encoded = encode_outcome(run_island(g, cfg, ops, rank, endpoint.get(), start));
        if (write_all(fds[1], encoded)) status = 0;
      } catch (...) {
      }
      ::_exit(status);
    }
    ::close(fds[1]);
    if (pid < 0) {
      ::close(fds[0]);
      continue;
    }
    children[rank] = pid;
    result_fds[rank] = fds[0];
  }
  for (std::size_t rank = 0; rank < cfg.islands; ++rank) {
    if (children[rank] < 0) continue;
    const Message encoded = read_all(result_fds[rank]);
    ::close(result_fds[rank]);
    int status = 0;
    ::waitpid(children[rank], &status, 0);
    if (WIFEXITED(status) && WEXITSTATUS(status) == 0) {
      outcomes[rank] = decode_outcome(g, encoded, rank);
    }
  }
  return outcomes;
}

}  // namespace

RunResult run(const Graph& g, const IslandConfig& cfg, const OperatorConfig& ops) {
  validate(cfg);
  const auto start = Clock::now();
  auto outcomes = cfg.transport == Transport::kProcess ? run_processes(g, cfg, ops, start)
                                                       : run_threads(g, cfg, ops, start);
  RunResult result;
  std::vector<ConvergenceLog> logs;
  std::optional<std::size_t> winner;
  for (std::size_t rank = 0; rank < outcomes.size(); ++rank) {
    if (!outcomes[rank]) {
      IslandReport failed;
      failed.island = rank;
      failed.failed = true;
      result.islands.push_back(failed);
      continue;
    }
    const IslandOutcome& o = *outcomes[rank];
    result.islands.push_back(o.report);
    ConvergenceLog log(cfg.seed, start);
    for (const auto& e : o.events) log.record_at(e.elapsed_seconds, e.modularity);
    logs.push_back(std::move(log));
    if (!winner || o.best.fitness > outcomes[*winner]->best.fitness) winner = rank;
  }
  if (!winner) throw Error("every island failed");
  result.best = outcomes[*winner]->best;
  result.events = merge_improvements(logs, cfg.seed);
  return result;
}

}  // namespace memclust
