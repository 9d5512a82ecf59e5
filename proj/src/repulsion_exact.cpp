#include <cstdint>

#include "tfdp/errors.hpp"
#include "tfdp/repulsion.hpp"

namespace tfdp {

namespace {

void require_finite(const Layout& layout) {
  if (!all_finite(layout)) throw NumericError("non-finite position passed to repulsion solver");
}

}  // namespace

RepulsionField repulsion_exact(const Layout& layout, const ForceParams& params,
                               const RefinementMask& mask) {
  require_finite(layout);
  const RepulsionKernel kernel(params);
  const std::size_t n = layout.size();
  RepulsionField field{std::vector<Vec2>(n), layout.generation, SolverKind::Exact, 0};
  const Vec2* pos = layout.positions.data();
  const bool boosted = !mask.is_identity();

#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const Vec2 xi = pos[i];
    double fx = 0.0, fy = 0.0;
    if (!boosted) {
      for (std::size_t j = 0; j < n; ++j) {
        const double dx = xi.x - pos[j].x;
        const double dy = xi.y - pos[j].y;
        const double w = kernel(dx * dx + dy * dy);
        fx += w * dx;  // j == i contributes w * 0
        fy += w * dy;
      }
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double dx = xi.x - pos[j].x;
        const double dy = xi.y - pos[j].y;
        const double w = kernel(dx * dx + dy * dy) *
                         mask.repulsion_boost(static_cast<NodeId>(i), static_cast<NodeId>(j));
        fx += w * dx;
        fy += w * dy;
      }
    }
    field.forces[i] = {fx, fy};
  }
  return field;
}

namespace reference {

RepulsionField repulsion_exact_serial(const Layout& layout, const ForceParams& params,
                                      const RefinementMask& mask) {
  require_finite(layout);
  const RepulsionKernel kernel(params);
  const std::size_t n = layout.size();
  RepulsionField field{std::vector<Vec2>(n), layout.generation, SolverKind::Exact, 0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec2 diff = layout[i] - layout[j];
      const Vec2 f = diff * (kernel(norm2(diff)) *
                             mask.repulsion_boost(static_cast<NodeId>(i), static_cast<NodeId>(j)));
      field.forces[i] += f;
      field.forces[j] -= f;
    }
  }
  return field;
}

}  // namespace reference

}  // namespace tfdp
