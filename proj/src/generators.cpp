#include "tfdp/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>

#include "tfdp/errors.hpp"

namespace tfdp {

namespace {

void require_nodes(std::size_t n) {
  if (n == 0) throw ArgumentError("generated graph needs at least one node");
}

NodeId id(std::size_t v) { return static_cast<NodeId>(v); }

}  // namespace

Graph path_graph(std::size_t n) {
  require_nodes(n);
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.push_back({id(v - 1), id(v)});
  return Graph(n, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw ArgumentError("cycle needs at least three nodes");
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) edges.push_back({id(v), id((v + 1) % n)});
  return Graph(n, edges);
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v <= leaves; ++v) edges.push_back({0, id(v)});
  return Graph(leaves + 1, edges);
}

Graph complete_graph(std::size_t n) {
  require_nodes(n);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) edges.push_back({id(u), id(v)});
  return Graph(n, edges);
}

Graph grid_graph(std::size_t rows, std::size_t cols) {
  require_nodes(rows * cols);
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t v = r * cols + c;
      if (c + 1 < cols) edges.push_back({id(v), id(v + 1)});
      if (r + 1 < rows) edges.push_back({id(v), id(v + cols)});
    }
  }
  return Graph(rows * cols, edges);
}

Graph torus_graph(std::size_t rows, std::size_t cols) {
  if (rows < 3 || cols < 3) throw ArgumentError("torus needs at least 3x3 nodes");
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t v = r * cols + c;
      edges.push_back({id(v), id(r * cols + (c + 1) % cols)});
      edges.push_back({id(v), id(((r + 1) % rows) * cols + c)});
    }
  }
  return Graph(rows * cols, edges);
}

Graph random_tree(std::size_t n, std::uint64_t seed) {
  require_nodes(n);
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> parent(0, v - 1);
    edges.push_back({id(parent(rng)), id(v)});
  }
  return Graph(n, edges);
}

Graph preferential_attachment(std::size_t n, std::size_t links, std::uint64_t seed) {
  if (links < 1) throw ArgumentError("preferential attachment needs links >= 1");
  if (n < links + 1) throw ArgumentError("preferential attachment needs n > links");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  std::vector<NodeId> endpoints;  // each node repeated once per incident edge
  for (std::size_t u = 0; u <= links; ++u) {
    for (std::size_t v = u + 1; v <= links; ++v) {
      edges.push_back({id(u), id(v)});
      endpoints.push_back(id(u));
      endpoints.push_back(id(v));
    }
  }
  std::vector<NodeId> targets;
  for (std::size_t v = links + 1; v < n; ++v) {
    targets.clear();
    while (targets.size() < links) {
      std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
      const NodeId t = endpoints[pick(rng)];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (NodeId t : targets) {
      edges.push_back({t, id(v)});
      endpoints.push_back(t);
      endpoints.push_back(id(v));
    }
  }
  return Graph(n, edges);
}

Graph cluster_graph(std::size_t clusters, std::size_t size, double p_in, double p_out, std::uint64_t seed) {
  require_nodes(clusters * size);
  if (!(p_in >= 0.0 && p_in <= 1.0 && p_out >= 0.0 && p_out <= 1.0)) {
    throw ArgumentError("edge probabilities must lie in [0, 1]");
  }
  const std::size_t n = clusters * size;
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution intra(p_in), inter(p_out);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const bool same = u / size == v / size;
      if (same ? intra(rng) : inter(rng)) edges.push_back({id(u), id(v)});
    }
    if ((u + 1) % size != 0 && u + 1 < n) edges.push_back({id(u), id(u + 1)});
  }
  return Graph(n, edges);
}

std::vector<NamedGraph> synthetic_trio() {
  std::vector<NamedGraph> out;
  out.push_back({"grid20x20", grid_graph(20, 20), {}});
  std::vector<std::uint32_t> groups(400);
  for (std::size_t v = 0; v < groups.size(); ++v) groups[v] = static_cast<std::uint32_t>(v / 200);
  out.push_back({"clusters2x200", cluster_graph(2, 200, 0.03, 0.0005, 11), std::move(groups)});
  out.push_back({"tree400", random_tree(400, 7), {}});
  return out;
}

namespace {

std::vector<double> parse_numbers(std::string_view text, std::string_view separators) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of(separators, start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view token = text.substr(start, end - start);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      throw ArgumentError("malformed generator argument '" + std::string(token) + "'");
    }
    values.push_back(value);
    start = end + 1;
  }
  return values;
}

std::size_t count(double v) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e8) throw ArgumentError("generator sizes must be whole numbers");
  return static_cast<std::size_t>(v);
}

}  // namespace

Graph generate_graph(std::string_view description, std::uint64_t seed) {
  const auto colon = description.find(':');
  if (colon == std::string_view::npos) throw ArgumentError("generator description needs 'kind:args'");
  const std::string_view kind = description.substr(0, colon);
  const auto args = parse_numbers(description.substr(colon + 1), "x,");
  auto expect = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      throw ArgumentError("wrong argument count for generator '" + std::string(kind) + "'");
    }
  };
  if (kind == "path") return expect(1, 1), path_graph(count(args[0]));
  if (kind == "cycle") return expect(1, 1), cycle_graph(count(args[0]));
  if (kind == "star") return expect(1, 1), star_graph(count(args[0]));
  if (kind == "complete") return expect(1, 1), complete_graph(count(args[0]));
  if (kind == "tree") return expect(1, 1), random_tree(count(args[0]), seed);
  if (kind == "grid") return expect(2, 2), grid_graph(count(args[0]), count(args[1]));
  if (kind == "torus") return expect(2, 2), torus_graph(count(args[0]), count(args[1]));
  if (kind == "pa") return expect(2, 2), preferential_attachment(count(args[0]), count(args[1]), seed);
  if (kind == "clusters") {
    expect(2, 4);
    const std::size_t size = count(args[1]);
    const double p_in = args.size() > 2 ? args[2] : std::min(1.0, 6.0 / static_cast<double>(size));
    const double p_out = args.size() > 3 ? args[3] : p_in / 60.0;
    return cluster_graph(count(args[0]), size, p_in, p_out, seed);
  }
  throw ArgumentError("unknown generator '" + std::string(kind) + "'");
}

}  // namespace tfdp
