#include "tfdp/distances.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "tfdp/errors.hpp"

namespace tfdp {

DistanceMatrix::DistanceMatrix(std::vector<NodeId> sources, std::size_t node_count)
    : sources_(std::move(sources)), n_(node_count), data_(sources_.size() * node_count, kUnreachable) {}

void bfs_row_limited(const Graph& g, NodeId source, HopCount max_depth, std::span<HopCount> out,
                     std::vector<NodeId>& queue) {
  std::fill(out.begin(), out.end(), kUnreachable);
  queue.clear();
  queue.push_back(source);
  out[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId v = queue[head];
    const HopCount next = out[v] + 1;
    if (out[v] >= max_depth) continue;
    for (NodeId w : g.neighbors(v)) {
      if (out[w] == kUnreachable) {
        out[w] = next;
        queue.push_back(w);
      }
    }
  }
}

void bfs_row(const Graph& g, NodeId source, std::span<HopCount> out, std::vector<NodeId>& queue) {
  bfs_row_limited(g, source, kUnreachable - 1, out, queue);
}

namespace {

void check_sources(const Graph& g, std::span<const NodeId> sources) {
  for (NodeId s : sources) {
    if (s >= g.node_count()) {
      throw ArgumentError("source " + std::to_string(s) + " out of range for n=" +
                          std::to_string(g.node_count()));
    }
  }
}

}  // namespace

DistanceMatrix bfs_distances(const Graph& g, std::span<const NodeId> sources) {
  check_sources(g, sources);
  DistanceMatrix dm(std::vector<NodeId>(sources.begin(), sources.end()), g.node_count());
  const auto rows = static_cast<std::int64_t>(sources.size());
#pragma omp parallel
  {
    std::vector<NodeId> queue;
    queue.reserve(g.node_count());
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t r = 0; r < rows; ++r) {
      bfs_row(g, sources[static_cast<std::size_t>(r)], dm.row(static_cast<std::size_t>(r)), queue);
    }
  }
  return dm;
}

DistanceMatrix all_pairs_distances(const Graph& g) {
  std::vector<NodeId> all(g.node_count());
  std::iota(all.begin(), all.end(), NodeId{0});
  return bfs_distances(g, all);
}

std::vector<NodeId> sample_sources(const Graph& g, std::size_t count, std::uint64_t seed) {
  std::vector<NodeId> all(g.node_count());
  std::iota(all.begin(), all.end(), NodeId{0});
  if (count >= all.size()) return all;
  std::mt19937_64 rng(seed);
  std::vector<NodeId> picked;
  picked.reserve(count);
  std::sample(all.begin(), all.end(), std::back_inserter(picked), count, rng);
  return picked;
}

namespace reference {

DistanceMatrix bfs_distances_serial(const Graph& g, std::span<const NodeId> sources) {
  check_sources(g, sources);
  DistanceMatrix dm(std::vector<NodeId>(sources.begin(), sources.end()), g.node_count());
  std::vector<NodeId> queue;
  for (std::size_t r = 0; r < sources.size(); ++r) bfs_row(g, sources[r], dm.row(r), queue);
  return dm;
}

}  // namespace reference

}  // namespace tfdp
