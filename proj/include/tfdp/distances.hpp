#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "tfdp/graph.hpp"

namespace tfdp {

using HopCount = std::uint32_t;
inline constexpr HopCount kUnreachable = std::numeric_limits<HopCount>::max();

/// Hop distances from a list of source nodes to every node, one row per source.
class DistanceMatrix {
 public:
  DistanceMatrix(std::vector<NodeId> sources, std::size_t node_count);

  std::span<const NodeId> sources() const noexcept { return sources_; }
  std::size_t row_count() const noexcept { return sources_.size(); }
  std::size_t node_count() const noexcept { return n_; }

  std::span<const HopCount> row(std::size_t r) const noexcept { return {data_.data() + r * n_, n_}; }
  std::span<HopCount> row(std::size_t r) noexcept { return {data_.data() + r * n_, n_}; }
  HopCount at(std::size_t r, NodeId v) const noexcept { return data_[r * n_ + v]; }

 private:
  std::vector<NodeId> sources_;
  std::size_t n_;
  std::vector<HopCount> data_;
};

/// BFS from `source`, writing hop counts into `out` (size n). `queue` is scratch
/// space reused across calls.
void bfs_row(const Graph& g, NodeId source, std::span<HopCount> out, std::vector<NodeId>& queue);

/// Same as bfs_row but stops expanding past `max_depth`; farther nodes stay kUnreachable.
void bfs_row_limited(const Graph& g, NodeId source, HopCount max_depth, std::span<HopCount> out,
                     std::vector<NodeId>& queue);

/// One BFS per source, rows in parallel. Throws ArgumentError for a source >= n.
DistanceMatrix bfs_distances(const Graph& g, std::span<const NodeId> sources);

/// All n sources.
DistanceMatrix all_pairs_distances(const Graph& g);

/// Below this node count distance-based metrics use every source by default.
inline constexpr std::size_t kFullDistanceLimit = 10000;

/// `count` distinct sources drawn uniformly (sorted); all nodes when count >= n.
std::vector<NodeId> sample_sources(const Graph& g, std::size_t count, std::uint64_t seed);

namespace reference {
DistanceMatrix bfs_distances_serial(const Graph& g, std::span<const NodeId> sources);
}

}  // namespace tfdp
