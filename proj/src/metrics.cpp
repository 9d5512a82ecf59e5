#include "tfdp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tfdp/distances.hpp"
#include "tfdp/errors.hpp"
#include "tfdp/knn.hpp"

namespace tfdp {

namespace {

void check_sizes(const Graph& g, const Layout& layout) {
  if (layout.size() != g.node_count()) {
    throw ArgumentError("layout has " + std::to_string(layout.size()) + " nodes, graph has " +
                        std::to_string(g.node_count()));
  }
}

constexpr std::size_t kStressSampleSources = 2000;

}  // namespace

StressResult stress_error(const Graph& g, const Layout& layout,
                          std::optional<std::span<const NodeId>> sources) {
  check_sizes(g, layout);
  const std::size_t n = g.node_count();
  if (n < 2) throw MetricError("stress error needs at least two nodes");

  StressResult result;
  std::vector<NodeId> chosen;
  bool upper_only = false;  // full mode counts each unordered pair once
  if (sources) {
    chosen.assign(sources->begin(), sources->end());
    result.sampled = chosen.size() < n;
  } else if (n < kFullDistanceLimit) {
    chosen = sample_sources(g, n, 0);
    upper_only = true;
  } else {
    chosen = sample_sources(g, kStressSampleSources, 0);
    result.sampled = true;
  }
  for (NodeId s : chosen)
    if (s >= n) throw ArgumentError("stress source out of range");

  // Per-source partial sums, combined in source order for reproducibility.
  struct Partial {
    long double a = 0, b = 0;
    std::size_t pairs = 0;
  };
  std::vector<Partial> partial(chosen.size());
#pragma omp parallel
  {
    std::vector<HopCount> row(n);
    std::vector<NodeId> queue;
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t si = 0; si < static_cast<std::int64_t>(chosen.size()); ++si) {
      const NodeId s = chosen[static_cast<std::size_t>(si)];
      bfs_row(g, s, row, queue);
      Partial p;
      for (std::size_t j = upper_only ? s + 1 : 0; j < n; ++j) {
        if (j == s || row[j] == kUnreachable) continue;
        const double d = static_cast<double>(row[j]);
        const double r = norm(layout[s] - layout[j]);
        p.a += r / d;
        p.b += (r * r) / (d * d);
        ++p.pairs;
      }
      partial[static_cast<std::size_t>(si)] = p;
    }
  }
  long double a = 0, b = 0;
  for (const auto& p : partial) {
    a += p.a;
    b += p.b;
    result.pairs += p.pairs;
  }
  if (result.pairs == 0) throw MetricError("stress error undefined: no finite-distance pairs");
  if (!(b > 0)) throw DegenerateLayoutError("stress error undefined: all layout distances are zero");
  // sum (s r - d)^2 / d^2 at the optimum s = a/b collapses to pairs - a^2/b.
  const long double count = static_cast<long double>(result.pairs);
  result.scale_factor = static_cast<double>(a / b);
  result.se = static_cast<double>(std::max<long double>(0, (count - a * a / b) / count));
  return result;
}

double neighborhood_preservation(const Graph& g, const Layout& layout, int ring) {
  check_sizes(g, layout);
  if (ring < 1) throw ArgumentError("ring radius must be at least 1");
  const std::size_t n = g.node_count();
  const KnnIndex index(layout);
  std::vector<double> score(n);

#pragma omp parallel
  {
    // Depth-limited BFS with stamp-based reset so each query costs O(ring size).
    std::vector<std::uint32_t> stamp(n, 0);
    std::vector<HopCount> depth(n, 0);
    std::uint32_t current = 0;
    std::vector<NodeId> frontier, graph_nbrs, layout_nbrs;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(n); ++ii) {
      const auto i = static_cast<NodeId>(ii);
      ++current;
      frontier.assign(1, i);
      stamp[i] = current;
      depth[i] = 0;
      graph_nbrs.clear();
      for (std::size_t head = 0; head < frontier.size(); ++head) {
        const NodeId v = frontier[head];
        if (depth[v] >= static_cast<HopCount>(ring)) continue;
        for (NodeId w : g.neighbors(v)) {
          if (stamp[w] == current) continue;
          stamp[w] = current;
          depth[w] = depth[v] + 1;
          frontier.push_back(w);
          graph_nbrs.push_back(w);
        }
      }
      if (graph_nbrs.empty()) {
        score[i] = 1.0;
        continue;
      }
      index.query(i, graph_nbrs.size(), layout_nbrs);
      std::size_t shared = 0;
      ++current;
      for (NodeId w : graph_nbrs) stamp[w] = current;
      for (NodeId w : layout_nbrs) shared += stamp[w] == current;
      const std::size_t unite = graph_nbrs.size() + layout_nbrs.size() - shared;
      score[i] = static_cast<double>(shared) / static_cast<double>(unite);
    }
  }
  double total = 0.0;
  for (double s : score) total += s;
  return total / static_cast<double>(n);
}

namespace detail {

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c) noexcept {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

}  // namespace

bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) noexcept {
  if (a == b || c == d) return false;
  const int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
    // Collinear: overlap of positive length along the dominant axis.
    const bool use_x = std::abs(b.x - a.x) >= std::abs(b.y - a.y);
    auto coord = [use_x](Vec2 p) { return use_x ? p.x : p.y; };
    const double lo = std::max(std::min(coord(a), coord(b)), std::min(coord(c), coord(d)));
    const double hi = std::min(std::max(coord(a), coord(b)), std::max(coord(c), coord(d)));
    return hi > lo;
  }
  return false;
}

}  // namespace detail

namespace {

bool share_endpoint(const Edge& e, const Edge& f) noexcept {
  return e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v;
}

}  // namespace

std::uint64_t count_crossings(const Graph& g, const Layout& layout) {
  check_sizes(g, layout);
  const auto edges = g.edges();
  const auto m = static_cast<std::int64_t>(edges.size());
  std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : total)
  for (std::int64_t a = 0; a < m; ++a) {
    const Edge& e = edges[static_cast<std::size_t>(a)];
    const Vec2 p = layout[e.u], q = layout[e.v];
    for (std::int64_t b = a + 1; b < m; ++b) {
      const Edge& f = edges[static_cast<std::size_t>(b)];
      if (share_endpoint(e, f)) continue;
      total += detail::segments_cross(p, q, layout[f.u], layout[f.v]);
    }
  }
  return total;
}

double max_crossings(const Graph& g) {
  const double m = static_cast<double>(g.edge_count());
  double impossible = 0.0;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const double d = static_cast<double>(g.degree(static_cast<NodeId>(v)));
    impossible += d * (d - 1.0);
  }
  return m * (m - 1.0) / 2.0 - impossible / 2.0;
}

double crosslessness(const Graph& g, const Layout& layout) {
  const double cmax = max_crossings(g);
  if (!(cmax > 0.0)) {
    check_sizes(g, layout);
    return 1.0;
  }
  const double c = static_cast<double>(count_crossings(g, layout));
  return 1.0 - std::sqrt(c / cmax);
}

double minimum_angle(const Graph& g, const Layout& layout) {
  check_sizes(g, layout);
  const std::size_t n = g.node_count();
  double total = 0.0;
  std::size_t counted = 0;
#pragma omp parallel reduction(+ : total, counted)
  {
    std::vector<double> angles;
#pragma omp for schedule(dynamic, 256)
    for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(n); ++ii) {
      const auto i = static_cast<NodeId>(ii);
      const auto nb = g.neighbors(i);
      if (nb.size() < 2) continue;
      angles.clear();
      for (NodeId j : nb) {
        const Vec2 d = layout[j] - layout[i];
        angles.push_back(std::atan2(d.y, d.x));
      }
      std::sort(angles.begin(), angles.end());
      double smallest = angles.front() + 2.0 * std::numbers::pi - angles.back();
      for (std::size_t k = 1; k < angles.size(); ++k) smallest = std::min(smallest, angles[k] - angles[k - 1]);
      const double ideal = 2.0 * std::numbers::pi / static_cast<double>(nb.size());
      total += std::abs(ideal - smallest) / ideal;
      ++counted;
    }
  }
  if (counted == 0) throw MetricError("minimum angle undefined: no node has degree >= 2");
  return 1.0 - total / static_cast<double>(counted);
}

double relative_error(double source, double target) {
  if (!(target > 0.0)) throw MetricError("relative error undefined for target value <= 0");
  return (source - target) / target;
}

MetricsReport compute_metrics(const Graph& g, const Layout& layout, const MetricSelection& which) {
  check_sizes(g, layout);
  MetricsReport report;
  for (std::size_t v = 0; v < g.node_count(); ++v) report.isolated_nodes += g.degree(static_cast<NodeId>(v)) == 0;
  auto guarded = [&](const char* name, auto&& fn) {
    try {
      fn();
    } catch (const MetricError& e) {
      report.notes.push_back(std::string(name) + ": " + e.what());
    }
  };
  if (which.se) {
    guarded("se", [&] {
      const auto s = stress_error(g, layout);
      report.se = s.se;
      report.scale_factor = s.scale_factor;
      report.sampled = s.sampled;
      report.se_pairs = s.pairs;
    });
  }
  if (which.np1) report.np1 = neighborhood_preservation(g, layout, 1);
  if (which.np2) report.np2 = neighborhood_preservation(g, layout, 2);
  if (which.cl) report.cl = crosslessness(g, layout);
  if (which.ma) {
    guarded("ma", [&] {
      report.ma = minimum_angle(g, layout);
      for (std::size_t v = 0; v < g.node_count(); ++v) report.ma_nodes += g.degree(static_cast<NodeId>(v)) >= 2;
    });
  }
  return report;
}

namespace reference {

std::uint64_t count_crossings_serial(const Graph& g, const Layout& layout) {
  check_sizes(g, layout);
  const auto edges = g.edges();
  std::uint64_t total = 0;
  for (std::size_t a = 0; a < edges.size(); ++a)
    for (std::size_t b = a + 1; b < edges.size(); ++b)
      if (!share_endpoint(edges[a], edges[b]) &&
          detail::segments_cross(layout[edges[a].u], layout[edges[a].v], layout[edges[b].u], layout[edges[b].v]))
        ++total;
  return total;
}

}  // namespace reference

}  // namespace tfdp
