#include "tfdp/svg.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "tfdp/errors.hpp"

namespace tfdp {

namespace {

constexpr double kExtent = 1000.0;
constexpr double kMargin = 0.05;
constexpr double kNodeRadius = 2.0;
constexpr double kStrokeWidth = 0.5;

}  // namespace

void write_svg(std::ostream& out, const Graph& g, const Layout& layout) {
  if (layout.size() != g.node_count()) throw ArgumentError("layout and graph sizes differ");
  const BoundingBox box = bounding_box(layout);
  const double side = std::max(box.width(), box.height());
  const double scale = side > 0.0 ? kExtent / side : 1.0;
  auto px = [&](Vec2 p) { return Vec2{(p.x - box.min.x) * scale, (box.max.y - p.y) * scale}; };
  const double w = box.width() * scale, h = box.height() * scale;
  const double pad = kMargin * std::max({w, h, 1.0});

  const auto old_precision = out.precision(6);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << -pad << ' ' << -pad << ' ' << w + 2 * pad
      << ' ' << h + 2 * pad << "\">\n"
      << "<g stroke=\"#888\" stroke-width=\"" << kStrokeWidth << "\">\n";
  for (const Edge& e : g.edges()) {
    const Vec2 a = px(layout[e.u]), b = px(layout[e.v]);
    out << "<line x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << b.x << "\" y2=\"" << b.y << "\"/>\n";
  }
  out << "</g>\n<g fill=\"#1f5fa8\">\n";
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const Vec2 c = px(layout[i]);
    out << "<circle cx=\"" << c.x << "\" cy=\"" << c.y << "\" r=\"" << kNodeRadius << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  out.precision(old_precision);
}

std::string to_svg(const Graph& g, const Layout& layout) {
  std::ostringstream out;
  write_svg(out, g, layout);
  return out.str();
}

}  // namespace tfdp
