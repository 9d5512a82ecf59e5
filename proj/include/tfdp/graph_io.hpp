#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "tfdp/graph.hpp"

namespace tfdp {

enum class GraphFormat { EdgeList, MatrixMarket, Auto };

/// Whitespace-separated "u v [ignored...]" lines; '#' and '%' start comment lines.
/// A "# nodes N" comment raises the node count to at least N.
Graph parse_edge_list(std::string_view text);

/// MatrixMarket coordinate files (pattern/real/integer, general/symmetric).
/// Entries are 1-based; values are ignored and the pattern is symmetrized.
Graph parse_matrix_market(std::string_view text);

/// Auto picks MatrixMarket when the text starts with the "%%MatrixMarket" banner.
Graph parse_graph(std::string_view text, GraphFormat format = GraphFormat::Auto);

/// Reads and parses a file. Throws InputError when the file cannot be read.
Graph load_graph(const std::filesystem::path& path, GraphFormat format = GraphFormat::Auto);

/// Canonical edge list: a "# nodes N" comment, then one "u v\n" per edge with
/// u < v, sorted lexicographically.
std::string write_edge_list(const Graph& g);

}  // namespace tfdp
