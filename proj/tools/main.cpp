#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "memclust/analysis.hpp"
#include "memclust/convergence.hpp"
#include "memclust/graph_io.hpp"
#include "memclust/island.hpp"

namespace fs = std::filesystem;
using namespace memclust;

namespace {

struct ClusterArgs {
  std::string graph;
  double time = 60.0;
  std::size_t islands = 1;
  std::uint64_t seed = 0;
  std::string output;
  std::string log;
  double init_fraction = 10.0;
  double mutation_ratio = 0.1;
  std::optional<std::size_t> rounds;
  std::optional<std::size_t> population;
  std::string transport = "threads";
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

int run_cluster(const ClusterArgs& args) {
  const Graph g = read_graph_file(args.graph);
  if (g.total_weight() <= 0) throw Error("graph has no edges; modularity is undefined");

  IslandConfig cfg;
  cfg.islands = args.islands;
  cfg.time_limit = args.time;
  cfg.init_fraction = args.init_fraction;
  cfg.seed = args.seed;
  cfg.rounds = args.rounds;
  cfg.population_size = args.population;
  cfg.transport = args.transport == "processes" ? Transport::kProcess : Transport::kInProcess;
  OperatorConfig ops;
  ops.mutation_ratio = args.mutation_ratio;

  const RunResult result = run(g, cfg, ops);

  const fs::path output = args.output.empty() ? fs::path(args.graph + ".clu") : fs::path(args.output);
  fs::path log = args.log.empty() ? fs::path(output).replace_extension(".csv") : fs::path(args.log);
  if (log == output) log += ".csv";
  write_clustering_file(output, result.best.clustering);
  auto log_out = open_output(log);
  write_convergence_csv(log_out, result.events);

  for (const auto& island : result.islands) {
    if (island.failed) std::cerr << "warning: island " << island.island << " failed\n";
  }
  const ClusterID k = result.best.clustering.num_clusters();
  const double bound = modularity_bound(g, k);
  std::printf("modularity=%.6f clusters=%u bound=%.6f ratio=%.6f\n", result.best.fitness, k, bound,
              result.best.fitness / bound);
  return 0;
}

int run_bound(const std::string& graph, std::optional<ClusterID> k, const std::string& clustering) {
  const Graph g = read_graph_file(graph);
  std::optional<double> q;
  if (!clustering.empty()) {
    const Clustering c = read_clustering_file(clustering, g.num_nodes());
    if (!k) k = c.num_clusters();
    q = modularity(g, c);
  }
  if (!k) throw Error("bound needs --k or --clustering");
  const double bound = modularity_bound(g, *k);
  if (q) {
    std::printf("modularity=%.6f clusters=%u bound=%.6f ratio=%.6f\n", *q, *k, bound, *q / bound);
  } else {
    std::printf("clusters=%u bound=%.6f\n", *k, bound);
  }
  return 0;
}

int run_analyze(const std::vector<std::string>& logs, const std::string& output) {
  std::vector<ConvergenceEvent> events;
  for (const auto& path : logs) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    const auto read = read_convergence_csv(in);
    events.insert(events.end(), read.begin(), read.end());
  }
  const auto curve = event_average(split_by_seed(events));
  if (output.empty()) {
    write_curve_csv(std::cout, curve);
  } else {
    auto out = open_output(output);
    write_curve_csv(out, curve);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Memetic modularity clustering"};
  app.require_subcommand(1);

  ClusterArgs cluster;
  auto* cmd_cluster = app.add_subcommand("cluster", "Cluster a METIS graph");
  cmd_cluster->add_option("graph", cluster.graph, "METIS graph file")->required()->check(CLI::ExistingFile);
  cmd_cluster->add_option("--time", cluster.time, "Wall-clock budget in seconds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd_cluster->add_option("--islands", cluster.islands, "Number of islands")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{1}, std::size_t{4096}));
  cmd_cluster->add_option("--seed", cluster.seed, "Random seed")->capture_default_str();
  cmd_cluster->add_option("--output", cluster.output, "Clustering output (default <graph>.clu)");
  cmd_cluster->add_option("--log", cluster.log, "Convergence CSV (default: output with .csv)");
  cmd_cluster->add_option("--init-fraction", cluster.init_fraction,
                          "Spend 1/c of the time on the initial population")
      ->capture_default_str()
      ->check(CLI::Range(1.0, 1e9));
  cmd_cluster->add_option("--mutation-ratio", cluster.mutation_ratio,
                          "Probability of mutation instead of recombination")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd_cluster->add_option("--rounds", cluster.rounds,
                          "Evolution rounds per island; ignores --time when set");
  cmd_cluster->add_option("--population", cluster.population, "Fixed population size")
      ->check(CLI::Range(std::size_t{1}, Population::kMaxSize));
  cmd_cluster->add_option("--transport", cluster.transport, "Island transport")
      ->capture_default_str()
      ->check(CLI::IsMember({"threads", "processes"}));

  std::string bound_graph;
  std::optional<ClusterID> bound_k;
  std::string bound_clustering;
  auto* cmd_bound = app.add_subcommand("bound", "Print the volume-balancing modularity bound");
  cmd_bound->add_option("graph", bound_graph, "METIS graph file")->required()->check(CLI::ExistingFile);
  cmd_bound->add_option("--k", bound_k, "Number of clusters")->check(CLI::PositiveNumber);
  cmd_bound->add_option("--clustering", bound_clustering, "Take k from this clustering file")
      ->check(CLI::ExistingFile);

  std::vector<std::string> analyze_logs;
  std::string analyze_output;
  auto* cmd_analyze = app.add_subcommand("analyze", "Event-based average of convergence logs");
  cmd_analyze->add_option("logs", analyze_logs, "Convergence CSV files")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_analyze->add_option("--output", analyze_output, "Curve CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_cluster) return run_cluster(cluster);
    if (*cmd_bound) return run_bound(bound_graph, bound_k, bound_clustering);
    if (*cmd_analyze) return run_analyze(analyze_logs, analyze_output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
