#include "tfdp/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "tfdp/errors.hpp"

namespace tfdp {

Graph::Graph(std::size_t n, std::span<const Edge> edges) : n_(n) {
  if (n == 0) throw InputError("graph has no nodes");

  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw ArgumentError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                          ") out of range for n=" + std::to_string(n));
    }
    if (e.u == e.v) continue;
    edges_.push_back(e.u < e.v ? e : Edge{e.v, e.u});
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.u]++] = e.v;
    adjacency_[cursor[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1]);
  }

  // Components in order of their lowest node id.
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  component_ids_.assign(n, kUnset);
  std::vector<NodeId> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (component_ids_[s] != kUnset) continue;
    const auto label = static_cast<std::uint32_t>(component_count_++);
    component_ids_[s] = label;
    stack.push_back(static_cast<NodeId>(s));
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : neighbors(v)) {
        if (component_ids_[w] == kUnset) {
          component_ids_[w] = label;
          stack.push_back(w);
        }
      }
    }
  }
}

bool Graph::has_edge(NodeId a, NodeId b) const noexcept {
  if (a >= n_ || b >= n_) return false;
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

}  // namespace tfdp
