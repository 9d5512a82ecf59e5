#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tfdp/geometry.hpp"

namespace tfdp {

/// Node positions plus a counter bumped once per solver iteration.
struct Layout {
  std::vector<Vec2> positions;
  std::uint64_t generation = 0;

  Layout() = default;
  explicit Layout(std::vector<Vec2> p, std::uint64_t gen = 0) : positions(std::move(p)), generation(gen) {}

  std::size_t size() const noexcept { return positions.size(); }
  Vec2& operator[](std::size_t i) noexcept { return positions[i]; }
  const Vec2& operator[](std::size_t i) const noexcept { return positions[i]; }
};

struct BoundingBox {
  Vec2 min;
  Vec2 max;
  double width() const noexcept { return max.x - min.x; }
  double height() const noexcept { return max.y - min.y; }
};

/// Throws ArgumentError for an empty layout.
BoundingBox bounding_box(const Layout& layout);

bool all_finite(const Layout& layout) noexcept;

/// "id,x,y" header then one row per node; coordinates use shortest round-trip form.
std::string write_layout_csv(const Layout& layout);
void write_layout_csv(std::ostream& out, const Layout& layout);

/// Accepts an optional "id,x,y" header; rows may appear in any order but ids
/// must cover 0..n-1 exactly once. Throws ParseError.
Layout parse_layout_csv(std::string_view text);

/// Throws InputError when the file cannot be read.
Layout load_layout_csv(const std::string& path);

}  // namespace tfdp
