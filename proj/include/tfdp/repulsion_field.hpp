#pragma once

#include <cstdint>
#include <vector>

#include "tfdp/geometry.hpp"

namespace tfdp {

enum class SolverKind { Exact, BarnesHut, RandomSampling, Ibfft };

/// Per-node repulsive forces for one layout generation.
struct RepulsionField {
  std::vector<Vec2> forces;
  std::uint64_t generation = 0;
  SolverKind solver = SolverKind::Exact;
  int k_used = 0;  ///< interpolation nodes per interval (ibFFT only)
};

}  // namespace tfdp
