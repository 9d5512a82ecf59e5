#pragma once

#include <iosfwd>
#include <string>

#include "tfdp/graph.hpp"
#include "tfdp/layout.hpp"

namespace tfdp {

/// Standalone SVG: one <line> per edge, then one <circle r="2"> per node.
/// The layout is scaled so its larger side spans 1000 units and the viewBox
/// adds a 5% margin. Throws ArgumentError when sizes differ.
void write_svg(std::ostream& out, const Graph& g, const Layout& layout);
std::string to_svg(const Graph& g, const Layout& layout);

}  // namespace tfdp
