#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>

#include "tfdp/errors.hpp"
#include "tfdp/repulsion.hpp"

namespace tfdp {

namespace {

constexpr int kMaxDepth = 48;  // below this, remaining points are (near-)coincident and share a leaf

struct Cell {
  Vec2 center;        // geometric center of the square
  double half = 0.0;  // half side length
  Vec2 com;           // center of mass
  double mass = 0.0;
  std::uint32_t begin = 0, end = 0;  // range into the permuted index array
  std::int32_t first_child = -1;     // four consecutive cells, or -1 for a leaf
};

class QuadTree {
 public:
  explicit QuadTree(const Layout& layout) : pos_(layout.positions) {
    order_.resize(pos_.size());
    std::iota(order_.begin(), order_.end(), 0u);
    const BoundingBox box = bounding_box(layout);
    const double side = std::max({box.width(), box.height(), 1e-12});
    Cell root;
    root.center = {0.5 * (box.min.x + box.max.x), 0.5 * (box.min.y + box.max.y)};
    root.half = 0.5 * side * (1.0 + 1e-9);
    root.begin = 0;
    root.end = static_cast<std::uint32_t>(order_.size());
    cells_.push_back(root);
    build(0, 0);
  }

  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const std::vector<std::uint32_t>& order() const noexcept { return order_; }

 private:
  void build(std::size_t idx, int depth) {
    Cell c = cells_[idx];
    Vec2 sum;
    for (std::uint32_t k = c.begin; k < c.end; ++k) sum += pos_[order_[k]];
    c.mass = static_cast<double>(c.end - c.begin);
    c.com = c.mass > 0 ? sum / c.mass : c.center;
    if (c.end - c.begin <= 1 || depth >= kMaxDepth) {
      cells_[idx] = c;
      return;
    }
    // Partition into quadrants: (x >= cx) + 2 * (y >= cy).
    auto quadrant = [&](std::uint32_t v) {
      return (pos_[v].x >= c.center.x ? 1 : 0) + (pos_[v].y >= c.center.y ? 2 : 0);
    };
    auto first = order_.begin() + c.begin;
    auto last = order_.begin() + c.end;
    std::array<decltype(first), 5> bounds;
    bounds[0] = first;
    bounds[4] = last;
    bounds[2] = std::partition(first, last, [&](std::uint32_t v) { return quadrant(v) < 2; });
    bounds[1] = std::partition(first, bounds[2], [&](std::uint32_t v) { return quadrant(v) == 0; });
    bounds[3] = std::partition(bounds[2], last, [&](std::uint32_t v) { return quadrant(v) == 2; });

    c.first_child = static_cast<std::int32_t>(cells_.size());
    cells_[idx] = c;
    const double h = 0.5 * c.half;
    for (int q = 0; q < 4; ++q) {
      Cell child;
      child.center = {c.center.x + ((q & 1) ? h : -h), c.center.y + ((q & 2) ? h : -h)};
      child.half = h;
      child.begin = static_cast<std::uint32_t>(bounds[q] - order_.begin());
      child.end = static_cast<std::uint32_t>(bounds[q + 1] - order_.begin());
      cells_.push_back(child);
    }
    for (int q = 0; q < 4; ++q) build(static_cast<std::size_t>(c.first_child + q), depth + 1);
  }

  const std::vector<Vec2>& pos_;
  std::vector<std::uint32_t> order_;
  std::vector<Cell> cells_;
};

}  // namespace

RepulsionField repulsion_bh(const Layout& layout, const ForceParams& params,
                            const RefinementMask& mask, double theta, BarnesHutStats* stats) {
  if (!(theta >= 0.0)) throw ArgumentError("theta must be nonnegative");
  if (!all_finite(layout)) throw NumericError("non-finite position passed to repulsion solver");
  const std::size_t n = layout.size();
  RepulsionField field{std::vector<Vec2>(n), layout.generation, SolverKind::BarnesHut, 0};
  if (n == 0) return field;

  const QuadTree tree(layout);
  const auto& cells = tree.cells();
  const auto& order = tree.order();
  const RepulsionKernel kernel(params);
  const double theta2 = theta * theta;
  std::size_t pair_evals = 0, cell_evals = 0;

#pragma omp parallel reduction(+ : pair_evals, cell_evals)
  {
    std::vector<std::int32_t> stack;
    stack.reserve(256);
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(n); ++ii) {
      const auto i = static_cast<std::uint32_t>(ii);
      const Vec2 xi = layout[i];
      Vec2 f;
      stack.clear();
      stack.push_back(0);
      while (!stack.empty()) {
        const Cell& c = cells[static_cast<std::size_t>(stack.back())];
        stack.pop_back();
        if (c.mass == 0.0) continue;
        if (c.first_child < 0) {
          for (std::uint32_t k = c.begin; k < c.end; ++k) {
            const std::uint32_t j = order[k];
            if (j == i) continue;
            const Vec2 diff = xi - layout[j];
            f += diff * kernel(norm2(diff));
            ++pair_evals;
          }
          continue;
        }
        const bool contains_i = std::abs(xi.x - c.center.x) <= c.half && std::abs(xi.y - c.center.y) <= c.half;
        const Vec2 diff = xi - c.com;
        const double d2 = norm2(diff);
        const double width = 2.0 * c.half;
        if (!contains_i && width * width < theta2 * d2) {
          f += diff * (c.mass * kernel(d2));
          ++cell_evals;
          continue;
        }
        for (int q = 0; q < 4; ++q) stack.push_back(c.first_child + q);
      }
      field.forces[i] = f;
    }
  }
  if (stats) *stats = {pair_evals, cell_evals};
  detail::apply_mask_correction(field.forces, layout, params, mask);
  return field;
}

}  // namespace tfdp
