#pragma once

#include <cstddef>
#include <vector>

#include "tfdp/graph.hpp"
#include "tfdp/layout.hpp"

namespace tfdp {

/// Uniform-grid index for exact k-nearest-neighbor queries in a layout.
/// Neighbors are ordered by (squared distance, node id); the query node itself
/// is excluded.
class KnnIndex {
 public:
  explicit KnnIndex(const Layout& layout);

  /// Writes min(k, n-1) neighbor ids of `node` into `out`, nearest first.
  void query(NodeId node, std::size_t k, std::vector<NodeId>& out) const;

 private:
  const Layout& layout_;
  Vec2 origin_;
  double cell_ = 1.0;
  std::size_t cols_ = 1, rows_ = 1;
  std::vector<std::size_t> cell_start_;  // CSR over cells
  std::vector<NodeId> cell_nodes_;
};

namespace reference {
/// O(n log n) per query by full sort.
void knn_brute_force(const Layout& layout, NodeId node, std::size_t k, std::vector<NodeId>& out);
}  // namespace reference

}  // namespace tfdp
