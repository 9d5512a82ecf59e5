#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>

#include "tfdp/errors.hpp"
#include "tfdp/random.hpp"
#include "tfdp/repulsion.hpp"

namespace tfdp {

namespace {

// `count` distinct values from [0, population), ascending.
void sample_without_replacement(std::size_t population, std::size_t count, std::mt19937_64& rng,
                                std::vector<std::size_t>& out) {
  out.clear();
  if (4 * count >= population) {
    // Selection sampling keeps ascending order in one pass.
    std::size_t needed = count;
    for (std::size_t v = 0; v < population && needed > 0; ++v) {
      const std::size_t left = population - v;
      if (unit_interval(rng()) * static_cast<double>(left) < static_cast<double>(needed)) {
        out.push_back(v);
        --needed;
      }
    }
    return;
  }
  // Floyd's algorithm.
  for (std::size_t j = population - count; j < population; ++j) {
    const std::size_t t = static_cast<std::size_t>(rng() % (j + 1));
    if (std::find(out.begin(), out.end(), t) == out.end()) {
      out.push_back(t);
    } else {
      out.push_back(j);
    }
  }
  std::sort(out.begin(), out.end());
}

}  // namespace

RepulsionField repulsion_rvs(const Layout& layout, const ForceParams& params,
                             const RefinementMask& mask, std::size_t sample_size,
                             std::uint64_t seed) {
  const std::size_t n = layout.size();
  if (n < 2 || sample_size < 1 || sample_size > n - 1) {
    throw ArgumentError("sample_size must be in [1, n-1]");
  }
  if (!all_finite(layout)) throw NumericError("non-finite position passed to repulsion solver");
  const RepulsionKernel kernel(params);
  RepulsionField field{std::vector<Vec2>(n), layout.generation, SolverKind::RandomSampling, 0};
  const double scale = static_cast<double>(n - 1) / static_cast<double>(sample_size);

#pragma omp parallel
  {
    std::vector<std::size_t> picks;
    picks.reserve(sample_size);
#pragma omp for schedule(static)
    for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(n); ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      std::mt19937_64 rng(mix_keys({seed, i}));
      sample_without_replacement(n - 1, sample_size, rng, picks);
      Vec2 f;
      for (std::size_t s : picks) {
        const std::size_t j = s >= i ? s + 1 : s;  // skip i itself
        const Vec2 diff = layout[i] - layout[j];
        f += diff * (kernel(norm2(diff)) *
                     mask.repulsion_boost(static_cast<NodeId>(i), static_cast<NodeId>(j)));
      }
      field.forces[i] = f * scale;
    }
  }
  return field;
}

}  // namespace tfdp
