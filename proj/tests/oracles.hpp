#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's numerical kernels; only plain data types are shared.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tfdp/graph.hpp"
#include "tfdp/layout.hpp"

namespace oracle {

inline constexpr std::uint32_t kInf = 0xffffffffu;

/// All-pairs hop counts, kInf when unreachable.
std::vector<std::vector<std::uint32_t>> floyd_warshall(const tfdp::Graph& g);

struct MdsResult {
  std::vector<double> eigenvalues;      ///< descending
  std::vector<tfdp::Vec2> coordinates;  ///< top-2 classical MDS embedding
};

/// Classical MDS of a full distance matrix by dense symmetric eigensolve.
MdsResult classical_mds(const std::vector<std::vector<double>>& distances);

/// Crossing count by parametric line intersection, with collinear overlaps
/// detected by interval projection. Pairs sharing an endpoint are skipped.
std::uint64_t brute_force_crossings(const tfdp::Graph& g, const tfdp::Layout& layout);

/// rho * sum_j (xi - xj) / (1 + |xi - xj|^2)^gamma with std::pow throughout.
std::vector<tfdp::Vec2> direct_repulsion(const tfdp::Layout& layout, double gamma, double rho);

double relative_l2(const std::vector<tfdp::Vec2>& approx, const std::vector<tfdp::Vec2>& exact);

double central_difference(const std::function<double(double)>& f, double x, double h);

/// Root of f on [lo, hi] where f changes sign.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-14);

/// Minimizes the scaled stress over s on a uniform grid then refines by
/// golden-section search; returns {s, stress}.
std::pair<double, double> scale_search(const std::vector<double>& layout_dist,
                                       const std::vector<double>& graph_dist);

/// k nearest ids by full sort on (squared distance, id), excluding `node`.
std::vector<tfdp::NodeId> knn_sorted(const tfdp::Layout& layout, tfdp::NodeId node, std::size_t k);

tfdp::Layout uniform_square(std::size_t n, double side, std::uint64_t seed);

tfdp::Graph random_graph(std::size_t n, double p, std::uint64_t seed);

}  // namespace oracle
