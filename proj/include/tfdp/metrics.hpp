#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tfdp/graph.hpp"
#include "tfdp/layout.hpp"

namespace tfdp {

struct StressResult {
  double se = 0.0;
  double scale_factor = 0.0;  ///< optimal uniform layout scale s
  std::size_t pairs = 0;      ///< finite-distance pairs included
  bool sampled = false;
};

/// Normalized stress error under the optimal scale s = sum(r/d) / sum(r^2/d^2),
/// averaged over finite-distance pairs. Without `sources`, every pair is used
/// when n < kFullDistanceLimit and 2000 sampled sources otherwise; with
/// `sources`, pairs (s, j) for every j != s.
/// Throws MetricError with no includable pair, DegenerateLayoutError when all
/// included layout distances are zero.
StressResult stress_error(const Graph& g, const Layout& layout,
                          std::optional<std::span<const NodeId>> sources = std::nullopt);

/// Mean Jaccard similarity between each node's r-ring graph neighborhood and
/// its equally sized layout kNN set. Nodes with an empty ring score 1.
double neighborhood_preservation(const Graph& g, const Layout& layout, int ring);

/// Proper crossings between edges without a shared endpoint; collinear edges
/// overlapping in a segment count once. O(m^2), parallel over edges.
std::uint64_t count_crossings(const Graph& g, const Layout& layout);

/// C(m,2) - sum_v deg(v)(deg(v)-1)/2.
double max_crossings(const Graph& g);

/// 1 - sqrt(c / c_max), or 1 when c_max is 0.
double crosslessness(const Graph& g, const Layout& layout);

/// 1 - mean over nodes of degree >= 2 of |theta - theta_min| / theta with
/// theta = 2 pi / degree. Throws MetricError when no node has degree >= 2.
double minimum_angle(const Graph& g, const Layout& layout);

/// (source - target) / target. Throws MetricError for target <= 0.
double relative_error(double source, double target);

/// Whether a positive relative error means the source method is better.
constexpr bool larger_is_better(std::string_view metric) { return metric != "se"; }

struct MetricSelection {
  bool se = true, np1 = true, np2 = true, cl = true, ma = true;
};

struct MetricsReport {
  std::optional<double> se, scale_factor, np1, np2, cl, ma;
  bool sampled = false;
  std::size_t se_pairs = 0;
  std::size_t ma_nodes = 0;  ///< nodes of degree >= 2 averaged by MA
  std::size_t isolated_nodes = 0;
  std::vector<std::string> notes;  ///< metrics that were undefined, and why
};

MetricsReport compute_metrics(const Graph& g, const Layout& layout, const MetricSelection& which = {});

namespace reference {
std::uint64_t count_crossings_serial(const Graph& g, const Layout& layout);
}

namespace detail {
/// Segment pair test used by count_crossings.
bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) noexcept;
}  // namespace detail

}  // namespace tfdp
