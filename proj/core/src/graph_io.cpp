#include "memclust/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

namespace memclust {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next line that is not a '%' comment. Returns false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && line.front() == '%') continue;
      return true;
    }
    return false;
  }

  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

template <typename Int>
Int to_int(std::string_view token, std::size_t line, const char* what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](char ch) { return ch == ' ' || ch == '\t'; });
}

}  // namespace

Graph parse_graph(std::istream& in) {
  LineReader reader(in);
  std::string line;
  bool has_header = false;
  while (!has_header && reader.next(line)) has_header = !blank(line);
  if (!has_header) throw ParseError(reader.number(), "missing header");

  const std::size_t header_line = reader.number();
  const auto header = split(line);
  if (header.size() < 2 || header.size() > 4) {
    throw ParseError(header_line, "header must be 'n m [fmt [ncon]]'");
  }
  const auto n64 = to_int<std::uint64_t>(header[0], header_line, "vertex count");
  const auto m = to_int<std::uint64_t>(header[1], header_line, "edge count");
  if (n64 >= static_cast<std::uint64_t>(static_cast<NodeID>(-1))) {
    throw ParseError(header_line, "vertex count too large");
  }
  const auto n = static_cast<NodeID>(n64);

  bool has_vertex_sizes = false, has_vertex_weights = false, has_edge_weights = false;
  if (header.size() >= 3) {
    const std::string_view fmt = header[2];
    if (fmt.size() > 3 || !std::all_of(fmt.begin(), fmt.end(), [](char ch) {
          return ch == '0' || ch == '1';
        })) {
      throw ParseError(header_line, "invalid format code '" + std::string(fmt) + "'");
    }
    const std::string padded = std::string(3 - fmt.size(), '0') + std::string(fmt);
    has_vertex_sizes = padded[0] == '1';
    has_vertex_weights = padded[1] == '1';
    has_edge_weights = padded[2] == '1';
  }
  std::size_t ncon = has_vertex_weights ? 1 : 0;
  if (header.size() == 4) {
    ncon = to_int<std::size_t>(header[3], header_line, "constraint count");
    if (!has_vertex_weights && ncon != 0) {
      throw ParseError(header_line, "constraint count given without vertex weights");
    }
  }
  const std::size_t skip = (has_vertex_sizes ? 1 : 0) + ncon;
  const std::size_t stride = has_edge_weights ? 2 : 1;

  std::vector<EdgeIndex> offsets{0};
  offsets.reserve(n + 1);
  std::vector<Neighbor> adjacency;
  adjacency.reserve(2 * m);
  std::vector<std::size_t> line_of(n);

  for (NodeID u = 0; u < n; ++u) {
    if (!reader.next(line)) {
      throw ParseError(reader.number(), "expected " + std::to_string(n) +
                                            " adjacency lines, found " + std::to_string(u));
    }
    const std::size_t lineno = reader.number();
    line_of[u] = lineno;
    const auto tokens = split(line);
    if (tokens.size() < skip || (tokens.size() - skip) % stride != 0) {
      throw ParseError(lineno, "malformed adjacency line");
    }
    for (std::size_t i = 0; i < skip; ++i) to_int<std::int64_t>(tokens[i], lineno, "vertex weight");
    const std::size_t begin = adjacency.size();
    for (std::size_t i = skip; i < tokens.size(); i += stride) {
      const auto target = to_int<std::uint64_t>(tokens[i], lineno, "neighbor index");
      if (target < 1 || target > n) {
        throw ParseError(lineno, "neighbor index " + std::to_string(target) + " out of range");
      }
      const auto v = static_cast<NodeID>(target - 1);
      if (v == u) throw ParseError(lineno, "self-loop on vertex " + std::to_string(target));
      EdgeWeight w = 1;
      if (has_edge_weights) {
        w = to_int<EdgeWeight>(tokens[i + 1], lineno, "edge weight");
        if (w < 0) throw ParseError(lineno, "negative edge weight");
      }
      adjacency.push_back({v, w});
    }
    auto first = adjacency.begin() + static_cast<std::ptrdiff_t>(begin);
    std::sort(first, adjacency.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    if (std::adjacent_find(first, adjacency.end(), [](const Neighbor& a, const Neighbor& b) {
          return a.node == b.node;
        }) != adjacency.end()) {
      throw ParseError(lineno, "duplicate neighbor");
    }
    offsets.push_back(adjacency.size());
  }
  while (reader.next(line)) {
    if (!blank(line)) throw ParseError(reader.number(), "trailing data after adjacency lines");
  }

  for (NodeID u = 0; u < n; ++u) {
    for (EdgeIndex i = offsets[u]; i < offsets[u + 1]; ++i) {
      const Neighbor& e = adjacency[i];
      auto first = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[e.node]);
      auto last = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[e.node + 1]);
      auto it = std::lower_bound(first, last, u,
                                 [](const Neighbor& a, NodeID id) { return a.node < id; });
      if (it == last || it->node != u) {
        throw ParseError(line_of[u], "edge " + std::to_string(u + 1) + "-" +
                                         std::to_string(e.node + 1) + " has no reverse entry");
      }
      if (it->weight != e.weight) {
        throw ParseError(line_of[u], "edge " + std::to_string(u + 1) + "-" +
                                         std::to_string(e.node + 1) + " has asymmetric weight");
      }
    }
  }
  if (adjacency.size() != 2 * m) {
    throw ParseError(header_line, "header declares " + std::to_string(m) + " edges, found " +
                                      std::to_string(adjacency.size() / 2));
  }

  return Graph(std::move(offsets), std::move(adjacency), std::vector<EdgeWeight>(n, 0),
               std::vector<NodeWeight>(n, 1));
}

Graph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file " + path.string());
  return parse_graph(in);
}

void write_clustering(std::ostream& out, const Clustering& c) {
  std::string buffer;
  buffer.reserve(static_cast<std::size_t>(c.size()) * 4);
  for (ClusterID id : c.assignment()) {
    buffer += std::to_string(id);
    buffer += '\n';
  }
  out << buffer;
}

void write_clustering_file(const std::filesystem::path& path, const Clustering& c) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write clustering file " + path.string());
  write_clustering(out, c);
  if (!out) throw Error("write failed for " + path.string());
}

Clustering read_clustering(std::istream& in, NodeID expected_nodes) {
  std::vector<ClusterID> labels;
  labels.reserve(expected_nodes);
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    if (blank(line)) continue;
    const auto tokens = split(line);
    if (tokens.size() != 1) throw ParseError(reader.number(), "expected one cluster ID");
    labels.push_back(to_int<ClusterID>(tokens[0], reader.number(), "cluster ID"));
  }
  if (labels.size() != expected_nodes) {
    throw ParseError(reader.number(), "expected " + std::to_string(expected_nodes) +
                                          " cluster IDs, found " + std::to_string(labels.size()));
  }
  return Clustering::from_labels(labels);
}

Clustering read_clustering_file(const std::filesystem::path& path, NodeID expected_nodes) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open clustering file " + path.string());
  return read_clustering(in, expected_nodes);
}

}  // namespace memclust
