#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tfdp/graph.hpp"
#include "tfdp/layout.hpp"

namespace tfdp {

inline constexpr std::size_t kDefaultPivotCount = 200;

/// i.i.d. uniform points in the disc of `radius` around the origin.
/// Throws ArgumentError for radius <= 0.
Layout init_random(const Graph& g, std::uint64_t seed, double radius);

/// PivotMDS: max-min pivots, double-centered squared hop distances, top-2
/// directions by power iteration. The result is centered at the origin and
/// scaled to unit mean edge length. Throws ArgumentError for pivot_count < 1.
Layout init_pivot_mds(const Graph& g, std::size_t pivot_count = kDefaultPivotCount,
                      std::uint64_t seed = 0);

namespace detail {

struct EigenPairs {
  std::vector<std::vector<double>> vectors;  // unit length, or zero for a null direction
  std::vector<double> values;
};

/// Leading eigenpairs of a dense symmetric PSD matrix (row-major, dim x dim) by
/// power iteration with deflation: at most 100 sweeps per vector, or until the
/// Rayleigh quotient changes by less than 1e-9 relative. Eigenvalues below
/// 1e-9 of the largest are returned as exact zeros with zero vectors.
EigenPairs top_eigenpairs(std::span<const double> matrix, std::size_t dim, std::size_t count,
                          std::uint64_t seed);

/// Farthest-point pivots: the first is drawn from `seed`, each next one
/// maximizes the hop distance to the chosen set (unreachable counts as
/// infinite, ties go to the lowest id).
std::vector<NodeId> select_pivots(const Graph& g, std::size_t count, std::uint64_t seed);

/// n x p double-centered matrix of squared hop distances to the pivots.
/// Unreachable pairs use (largest finite distance + 1).
std::vector<double> centered_pivot_matrix(const Graph& g, std::span<const NodeId> pivots);

}  // namespace detail

}  // namespace tfdp
