#include "tfdp/repulsion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "tfdp/errors.hpp"
#include "tfdp/random.hpp"

namespace tfdp {

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::Exact: return "exact";
    case SolverKind::BarnesHut: return "bh";
    case SolverKind::RandomSampling: return "rvs";
    case SolverKind::Ibfft: return "ibfft";
  }
  return "?";
}

std::string_view to_string(KPolicy policy) {
  switch (policy) {
    case KPolicy::Fixed1: return "fixed1";
    case KPolicy::Fixed2: return "fixed2";
    case KPolicy::Fixed3: return "fixed3";
    case KPolicy::Dynamic: return "dynamic";
  }
  return "?";
}

std::optional<SolverKind> parse_solver_kind(std::string_view name) {
  for (auto k : {SolverKind::Exact, SolverKind::BarnesHut, SolverKind::RandomSampling, SolverKind::Ibfft})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

std::optional<KPolicy> parse_k_policy(std::string_view name) {
  for (auto p : {KPolicy::Fixed1, KPolicy::Fixed2, KPolicy::Fixed3, KPolicy::Dynamic})
    if (name == to_string(p)) return p;
  return std::nullopt;
}

std::size_t default_sample_size(std::size_t n) {
  if (n < 2) return 0;
  const auto log2n = static_cast<std::size_t>(std::bit_width(n - 1));  // ceil(log2 n)
  return std::min(std::max<std::size_t>(16, log2n), n - 1);
}

std::vector<int> dynamic_k_schedule(int total_iterations) {
  if (total_iterations < 1) throw ArgumentError("iteration count must be at least 1");
  const int t = total_iterations;
  if (t < 20) return std::vector<int>(static_cast<std::size_t>(t), 3);
  const int first = (9 * t + 9) / 10;           // ceil(0.90 T)
  const int second = std::min((t + 19) / 20, t - first);  // ceil(0.05 T)
  std::vector<int> ks;
  ks.reserve(static_cast<std::size_t>(t));
  ks.insert(ks.end(), static_cast<std::size_t>(first), 1);
  ks.insert(ks.end(), static_cast<std::size_t>(second), 2);
  ks.insert(ks.end(), static_cast<std::size_t>(t - first - second), 3);
  return ks;
}

int interpolation_order(KPolicy policy, int iteration, int total_iterations) {
  switch (policy) {
    case KPolicy::Fixed1: return 1;
    case KPolicy::Fixed2: return 2;
    case KPolicy::Fixed3: return 3;
    case KPolicy::Dynamic: {
      if (total_iterations < 20) return 3;
      const int t = total_iterations;
      const int first = (9 * t + 9) / 10;
      const int second = std::min((t + 19) / 20, t - first);
      if (iteration < first) return 1;
      if (iteration < first + second) return 2;
      return 3;
    }
  }
  return 3;
}

RepulsionField compute_repulsion(const Layout& layout, const ForceParams& params,
                                 const RefinementMask& mask, const SolverConfig& config, int k,
                                 std::uint64_t seed) {
  switch (config.kind) {
    case SolverKind::Exact:
      return repulsion_exact(layout, params, mask);
    case SolverKind::BarnesHut:
      return repulsion_bh(layout, params, mask, config.theta);
    case SolverKind::RandomSampling: {
      if (layout.size() < 2) return repulsion_exact(layout, params, mask);
      const std::size_t s = config.sample_size ? std::min(config.sample_size, layout.size() - 1)
                                               : default_sample_size(layout.size());
      return repulsion_rvs(layout, params, mask, s, seed);
    }
    case SolverKind::Ibfft:
      return repulsion_ibfft(layout, params, GridPolicy{k, config.intervals_per_unit, 50}, mask);
  }
  throw ArgumentError("unknown solver");
}

namespace detail {

void apply_mask_correction(std::vector<Vec2>& forces, const Layout& layout,
                           const ForceParams& params, const RefinementMask& mask) {
  if (mask.is_identity()) return;
  const RepulsionKernel kernel(params);
  const auto region = mask.region();
  const double focal = mask.boosts().focal_repel;
  const double surround = mask.boosts().surround_repel;
  // Region node i:  F = total + (focal - 1) * S_i
  // Outside node i: F = surround * total + (1 - surround) * S_i
  // where S_i is the exact repulsion on i from region nodes.
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(layout.size()); ++ii) {
    const auto i = static_cast<NodeId>(ii);
    const bool inside = mask.in_region(i);
    if (inside ? focal == 1.0 : surround == 1.0) continue;
    Vec2 s;
    for (NodeId j : region) {
      if (j == i) continue;
      const Vec2 diff = layout[i] - layout[j];
      s += diff * kernel(norm2(diff));
    }
    if (inside) {
      forces[i] += s * (focal - 1.0);
    } else {
      forces[i] = forces[i] * surround + s * (1.0 - surround);
    }
  }
}

}  // namespace detail

}  // namespace tfdp
