#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tfdp/graph.hpp"

namespace tfdp {

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
/// Center 0 joined to leaves 1..leaves.
Graph star_graph(std::size_t leaves);
Graph complete_graph(std::size_t n);
/// Node (r, c) is r * cols + c.
Graph grid_graph(std::size_t rows, std::size_t cols);
Graph torus_graph(std::size_t rows, std::size_t cols);
/// Uniform random recursive tree: node v > 0 attaches to a uniform earlier node.
Graph random_tree(std::size_t n, std::uint64_t seed);
/// Each new node attaches to `links` distinct existing nodes with probability
/// proportional to degree; starts from a clique of links + 1 nodes.
Graph preferential_attachment(std::size_t n, std::size_t links, std::uint64_t seed);
/// Stochastic block graph: `clusters` blocks of `size` nodes (block of v is
/// v / size), intra-block edge probability p_in, inter-block p_out. A path
/// through each block keeps blocks connected.
Graph cluster_graph(std::size_t clusters, std::size_t size, double p_in, double p_out, std::uint64_t seed);

struct NamedGraph {
  std::string name;
  Graph graph;
  std::vector<std::uint32_t> groups;  ///< planted cluster per node, empty when none
};

/// Fixed-seed benchmark set of three n~400 graphs: a 20x20 grid, two planted
/// clusters of 200, and a random tree.
std::vector<NamedGraph> synthetic_trio();

/// Builds a graph from a short description such as "grid:20x20", "torus:10x10",
/// "clusters:2x200", "tree:400", "pa:1000,2", "path:20", "star:8", "cycle:6",
/// "complete:4". Throws ArgumentError for an unknown or malformed description.
Graph generate_graph(std::string_view description, std::uint64_t seed);

}  // namespace tfdp
