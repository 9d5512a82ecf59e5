#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tfdp {

using NodeId = std::uint32_t;

/// Undirected edge; normalized graphs always store u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable undirected simple graph with CSR adjacency and connected-component labels.
///
/// Construction drops self-loops and collapses duplicate (including reversed)
/// edges. Node ids are the dense range [0, n); ids that appear in no edge stay
/// as isolated nodes.
class Graph {
 public:
  /// Throws InputError for n == 0 and ArgumentError for an endpoint >= n.
  Graph(std::size_t n, std::span<const Edge> edges);
  Graph(std::size_t n, const std::vector<Edge>& edges)
      : Graph(n, std::span<const Edge>(edges.data(), edges.size())) {}

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Sorted lexicographically, u < v in every entry.
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Sorted ascending.
  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId a, NodeId b) const noexcept;

  std::span<const std::uint32_t> component_ids() const noexcept { return component_ids_; }
  std::size_t component_count() const noexcept { return component_count_; }

  friend bool operator==(const Graph& a, const Graph& b) noexcept {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<std::uint32_t> component_ids_;
  std::size_t component_count_ = 0;
};

}  // namespace tfdp
