#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tfdp/force_model.hpp"
#include "tfdp/layout.hpp"
#include "tfdp/repulsion_field.hpp"

namespace tfdp {

enum class KPolicy { Fixed1, Fixed2, Fixed3, Dynamic };

struct SolverConfig {
  SolverKind kind = SolverKind::Ibfft;
  double theta = 0.5;           ///< Barnes-Hut opening threshold
  std::size_t sample_size = 0;  ///< RVS sample size; 0 selects default_sample_size(n)
  KPolicy k_policy = KPolicy::Dynamic;
  double intervals_per_unit = 2.0;  ///< ibFFT grid density, see GridPolicy

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

std::string_view to_string(SolverKind kind);
std::string_view to_string(KPolicy policy);
std::optional<SolverKind> parse_solver_kind(std::string_view name);
std::optional<KPolicy> parse_k_policy(std::string_view name);

/// O(n^2) pairwise sum, parallel over target nodes.
RepulsionField repulsion_exact(const Layout& layout, const ForceParams& params,
                               const RefinementMask& mask = {});

struct BarnesHutStats {
  std::size_t pair_evaluations = 0;  ///< point-point interactions
  std::size_t cell_evaluations = 0;  ///< cells summarized by their center of mass
};

/// Quadtree approximation. A cell of width w whose center of mass lies at
/// distance d is summarized when w/d < theta; theta = 0 degenerates to exact.
RepulsionField repulsion_bh(const Layout& layout, const ForceParams& params,
                            const RefinementMask& mask, double theta,
                            BarnesHutStats* stats = nullptr);

/// max(16, ceil(log2 n)), capped at n-1.
std::size_t default_sample_size(std::size_t n);

/// Each node averages the pair force over `sample_size` distinct other nodes
/// and rescales by (n-1)/sample_size. Deterministic in (seed, node).
/// Throws ArgumentError unless 1 <= sample_size <= n-1.
RepulsionField repulsion_rvs(const Layout& layout, const ForceParams& params,
                             const RefinementMask& mask, std::size_t sample_size,
                             std::uint64_t seed);

/// Interval count per axis is max(min_intervals, ceil(intervals_per_unit * span)).
/// With intervals_per_unit = 1 this is the classic t-SNE grid rule; the default
/// of 2 keeps intervals at most half a kernel length wide, which holds the
/// k = 3 field error under 1% on sparse layouts.
struct GridPolicy {
  int k = 3;  ///< interpolation nodes per interval, 1..3
  double intervals_per_unit = 2.0;
  std::size_t min_intervals = 50;
};

/// Geometry of the interpolation grid over the layout's bounding square.
struct InterpGrid {
  Vec2 origin;                    ///< lower-left corner of the bounding square
  double span = 0.0;              ///< side of the bounding square
  std::size_t intervals = 0;      ///< intervals per axis
  int k = 1;                      ///< interpolation nodes per interval
  double interval_width = 0.0;
  double node_spacing = 0.0;      ///< interval_width / k

  std::size_t nodes_per_axis() const noexcept { return intervals * static_cast<std::size_t>(k); }
  /// Offset of grid node g from the origin along either axis.
  double node_offset(std::size_t g) const noexcept { return (static_cast<double>(g) + 0.5) * node_spacing; }
};

/// Throws ArgumentError unless k is 1, 2 or 3. An all-coincident layout gets a
/// unit square centered on the point.
InterpGrid make_interp_grid(const Layout& layout, const GridPolicy& policy);

/// Interpolation-based FFT summation of the three kernel sums (weights 1, x, y)
/// followed by F(i) = x_i * psi_1(i) - psi_x(i). t-FDP law only (the grid needs
/// a kernel bounded at zero distance); throws ArgumentError otherwise.
RepulsionField repulsion_ibfft(const Layout& layout, const ForceParams& params,
                               const GridPolicy& policy, const RefinementMask& mask = {});

/// k per iteration: ceil(0.9T) at k=1, ceil(0.05T) at k=2, the rest at k=3;
/// T < 20 uses k=3 throughout. Throws ArgumentError for T < 1.
std::vector<int> dynamic_k_schedule(int total_iterations);

/// k for iteration t under `policy` (the dynamic schedule needs the total T).
int interpolation_order(KPolicy policy, int iteration, int total_iterations);

/// Dispatch on config.kind. `seed` drives RVS sampling; `k` is used by ibFFT.
RepulsionField compute_repulsion(const Layout& layout, const ForceParams& params,
                                 const RefinementMask& mask, const SolverConfig& config, int k,
                                 std::uint64_t seed);

namespace reference {
/// Symmetric i<j pair loop on one thread; the oracle for every other solver.
RepulsionField repulsion_exact_serial(const Layout& layout, const ForceParams& params,
                                      const RefinementMask& mask = {});
}  // namespace reference

namespace detail {
/// Adds exact boost corrections for pairs touching the refinement region to an
/// unmasked field, turning it into the masked field.
void apply_mask_correction(std::vector<Vec2>& forces, const Layout& layout,
                           const ForceParams& params, const RefinementMask& mask);
}  // namespace detail

}  // namespace tfdp
