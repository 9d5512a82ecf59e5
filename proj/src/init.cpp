#include "tfdp/init.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "tfdp/distances.hpp"
#include "tfdp/errors.hpp"
#include "tfdp/random.hpp"

namespace tfdp {

Layout init_random(const Graph& g, std::uint64_t seed, double radius) {
  if (!(radius > 0.0)) throw ArgumentError("init radius must be positive");
  std::mt19937_64 rng(seed);
  Layout layout;
  layout.positions.resize(g.node_count());
  for (auto& p : layout.positions) {
    const double r = radius * std::sqrt(unit_interval(rng()));
    const double a = 2.0 * std::numbers::pi * unit_interval(rng());
    p = {r * std::cos(a), r * std::sin(a)};
  }
  return layout;
}

namespace detail {

namespace {

void matvec(std::span<const double> m, std::size_t dim, const std::vector<double>& v,
            std::vector<double>& out) {
  for (std::size_t r = 0; r < dim; ++r) {
    double s = 0.0;
    const double* row = m.data() + r * dim;
    for (std::size_t c = 0; c < dim; ++c) s += row[c] * v[c];
    out[r] = s;
  }
}

double normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  if (s > 0.0)
    for (double& x : v) x /= s;
  return s;
}

void orthogonalize(std::vector<double>& v, const std::vector<std::vector<double>>& basis) {
  for (const auto& b : basis) {
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) d += v[i] * b[i];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * b[i];
  }
}

}  // namespace

EigenPairs top_eigenpairs(std::span<const double> matrix, std::size_t dim, std::size_t count,
                          std::uint64_t seed) {
  constexpr int kMaxSweeps = 100;
  constexpr double kRelTol = 1e-9;
  if (matrix.size() != dim * dim) throw ArgumentError("matrix size does not match dimension");
  count = std::min(count, dim);

  EigenPairs out;
  std::mt19937_64 rng(seed);
  std::vector<double> v(dim), w(dim);
  for (std::size_t k = 0; k < count; ++k) {
    for (double& x : v) x = unit_interval(rng()) - 0.5;
    orthogonalize(v, out.vectors);
    normalize(v);

    double lambda = 0.0;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      matvec(matrix, dim, v, w);
      orthogonalize(w, out.vectors);  // deflation against converged directions
      const double next = std::inner_product(v.begin(), v.end(), w.begin(), 0.0);
      if (normalize(w) == 0.0) {
        lambda = 0.0;
        break;
      }
      v.swap(w);
      const bool converged = sweep > 0 && std::abs(next - lambda) <= kRelTol * std::abs(next);
      lambda = next;
      if (converged) break;
    }
    // A (numerically) null direction is pure roundoff amplified from the ones
    // above; report it as zero instead of a spurious copy of them.
    if (k > 0 && lambda <= kRelTol * out.values.front()) {
      std::fill(v.begin(), v.end(), 0.0);
      lambda = 0.0;
    }
    out.vectors.push_back(v);
    out.values.push_back(lambda);
  }
  return out;
}

std::vector<NodeId> select_pivots(const Graph& g, std::size_t count, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  count = std::min(count, n);
  std::vector<NodeId> pivots;
  if (count == 0) return pivots;

  std::mt19937_64 rng(seed);
  pivots.push_back(static_cast<NodeId>(rng() % n));
  std::vector<HopCount> min_dist(n, kUnreachable), row(n);
  std::vector<bool> chosen(n, false);
  std::vector<NodeId> queue;
  chosen[pivots[0]] = true;
  while (pivots.size() < count) {
    bfs_row(g, pivots.back(), row, queue);
    for (std::size_t v = 0; v < n; ++v) min_dist[v] = std::min(min_dist[v], row[v]);
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (chosen[v]) continue;
      if (best == n || min_dist[v] > min_dist[best]) best = v;
    }
    chosen[best] = true;
    pivots.push_back(static_cast<NodeId>(best));
  }
  return pivots;
}

std::vector<double> centered_pivot_matrix(const Graph& g, std::span<const NodeId> pivots) {
  const std::size_t n = g.node_count();
  const std::size_t p = pivots.size();
  const DistanceMatrix dm = bfs_distances(g, pivots);

  HopCount max_finite = 0;
  for (std::size_t r = 0; r < p; ++r)
    for (HopCount d : dm.row(r))
      if (d != kUnreachable) max_finite = std::max(max_finite, d);
  const double fill = static_cast<double>(max_finite) + 1.0;

  std::vector<double> c(n * p);
  for (std::size_t r = 0; r < p; ++r) {
    auto row = dm.row(r);
    for (std::size_t v = 0; v < n; ++v) {
      const double d = row[v] == kUnreachable ? fill : static_cast<double>(row[v]);
      c[v * p + r] = d * d;
    }
  }
  std::vector<double> row_mean(n, 0.0), col_mean(p, 0.0);
  double grand = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t r = 0; r < p; ++r) {
      row_mean[v] += c[v * p + r];
      col_mean[r] += c[v * p + r];
    }
    grand += row_mean[v];
    row_mean[v] /= static_cast<double>(p);
  }
  for (double& m : col_mean) m /= static_cast<double>(n);
  grand /= static_cast<double>(n * p);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t r = 0; r < p; ++r)
      c[v * p + r] = -0.5 * (c[v * p + r] - row_mean[v] - col_mean[r] + grand);
  return c;
}

}  // namespace detail

namespace {

void center(Layout& layout) {
  Vec2 mean;
  for (const Vec2& p : layout.positions) mean += p;
  mean = mean / static_cast<double>(layout.size());
  for (Vec2& p : layout.positions) p -= mean;
}

void scale_to_unit_edges(const Graph& g, Layout& layout) {
  if (g.edge_count() == 0) return;
  double total = 0.0;
  for (const Edge& e : g.edges()) total += norm(layout[e.u] - layout[e.v]);
  const double mean = total / static_cast<double>(g.edge_count());
  if (!(mean > 0.0)) return;
  for (Vec2& p : layout.positions) p = p / mean;
}

}  // namespace

Layout init_pivot_mds(const Graph& g, std::size_t pivot_count, std::uint64_t seed) {
  if (pivot_count < 1) throw ArgumentError("pivot_count must be at least 1");
  const std::size_t n = g.node_count();
  const auto pivots = detail::select_pivots(g, pivot_count, seed);
  const std::size_t p = pivots.size();
  const auto c = detail::centered_pivot_matrix(g, pivots);

  // p x p Gram matrix C^T C; its eigenvectors map through C to the embedding.
  std::vector<double> gram(p * p, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < static_cast<std::int64_t>(p); ++a) {
    for (std::size_t b = static_cast<std::size_t>(a); b < p; ++b) {
      double s = 0.0;
      for (std::size_t v = 0; v < n; ++v) s += c[v * p + a] * c[v * p + b];
      gram[a * p + b] = s;
      gram[b * p + a] = s;
    }
  }
  const auto eig = detail::top_eigenpairs(gram, p, 2, mix_keys({seed, 0x9d5}));

  Layout layout;
  layout.positions.assign(n, Vec2{});
  for (std::size_t v = 0; v < n; ++v) {
    double x = 0.0, y = 0.0;
    for (std::size_t r = 0; r < p; ++r) {
      x += c[v * p + r] * eig.vectors[0][r];
      if (eig.vectors.size() > 1) y += c[v * p + r] * eig.vectors[1][r];
    }
    layout[v] = {x, y};
  }
  center(layout);

  double spread = 0.0;
  for (const Vec2& q : layout.positions) spread = std::max(spread, norm(q));
  if (!(spread > 1e-12) || !all_finite(layout)) {
    layout = init_random(g, seed, 1e-3);
    center(layout);
  }
  scale_to_unit_edges(g, layout);
  return layout;
}

}  // namespace tfdp
