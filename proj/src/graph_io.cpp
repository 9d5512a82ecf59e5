#include "tfdp/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "tfdp/errors.hpp"

namespace tfdp {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (!fn(line_no, line)) return;
    if (end == text.size()) break;
    pos = end + 1;
  }
}

std::uint64_t parse_index(std::string_view token, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line_no, "expected a nonnegative integer, got '" + std::string(token) + "'");
  }
  if (value >= std::uint64_t{1} << 31) throw ParseError(line_no, "node index too large");
  return value;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::uint64_t max_id = 0;
  bool any = false;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    auto tokens = split_tokens(line);
    if (tokens.empty()) return true;
    if (tokens.front().front() == '#' || tokens.front().front() == '%') {
      // "# nodes N" keeps trailing isolated nodes across a write/parse cycle.
      if (tokens.size() == 3 && tokens[0] == "#" && tokens[1] == "nodes") {
        const auto n = parse_index(tokens[2], line_no);
        if (n > 0) {
          max_id = std::max(max_id, n - 1);
          any = true;
        }
      }
      return true;
    }
    if (tokens.size() < 2) throw ParseError(line_no, "expected two node ids");
    const auto u = parse_index(tokens[0], line_no);
    const auto v = parse_index(tokens[1], line_no);
    max_id = std::max({max_id, u, v});
    any = true;
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    return true;
  });
  if (!any) throw InputError("edge list contains no nodes");
  return Graph(static_cast<std::size_t>(max_id) + 1, edges);
}

Graph parse_matrix_market(std::string_view text) {
  bool have_header = false;
  bool have_size = false;
  bool symmetric = false;
  bool pattern = false;
  std::uint64_t rows = 0, cols = 0, nnz = 0, seen = 0;
  std::vector<Edge> edges;

  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (!have_header) {
      auto tokens = split_tokens(line);
      if (tokens.size() != 5 || lower(tokens[0]) != "%%matrixmarket") {
        throw ParseError(line_no, "missing %%MatrixMarket header");
      }
      if (lower(tokens[1]) != "matrix" || lower(tokens[2]) != "coordinate") {
        throw ParseError(line_no, "only 'matrix coordinate' files are supported");
      }
      const auto field = lower(tokens[3]);
      if (field != "pattern" && field != "real" && field != "integer") {
        throw ParseError(line_no, "unsupported field '" + std::string(tokens[3]) + "'");
      }
      const auto sym = lower(tokens[4]);
      if (sym != "general" && sym != "symmetric") {
        throw ParseError(line_no, "unsupported symmetry '" + std::string(tokens[4]) + "'");
      }
      pattern = field == "pattern";
      symmetric = sym == "symmetric";
      have_header = true;
      return true;
    }
    auto tokens = split_tokens(line);
    if (tokens.empty() || tokens.front().front() == '%') return true;
    if (!have_size) {
      if (tokens.size() != 3) throw ParseError(line_no, "expected 'rows cols entries'");
      rows = parse_index(tokens[0], line_no);
      cols = parse_index(tokens[1], line_no);
      nnz = parse_index(tokens[2], line_no);
      if (rows != cols) throw ParseError(line_no, "adjacency matrix must be square");
      if (rows == 0) throw InputError("matrix has no rows");
      have_size = true;
      return true;
    }
    if (tokens.size() < (pattern ? 2u : 3u)) throw ParseError(line_no, "truncated entry");
    const auto i = parse_index(tokens[0], line_no);
    const auto j = parse_index(tokens[1], line_no);
    if (i < 1 || j < 1 || i > rows || j > cols) {
      throw ParseError(line_no, "entry outside the declared dimensions");
    }
    if (++seen > nnz) throw ParseError(line_no, "more entries than declared");
    edges.push_back({static_cast<NodeId>(i - 1), static_cast<NodeId>(j - 1)});
    return true;
  });

  if (!have_header) throw ParseError(0, "missing %%MatrixMarket header");
  if (!have_size) throw ParseError(0, "missing size line");
  if (seen != nnz) {
    throw ParseError(0, "declared " + std::to_string(nnz) + " entries, found " + std::to_string(seen));
  }
  (void)symmetric;  // undirected graph: both symmetries collapse to the same edge set
  return Graph(static_cast<std::size_t>(rows), edges);
}

Graph parse_graph(std::string_view text, GraphFormat format) {
  if (format == GraphFormat::Auto) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    format = lower(text.substr(i, 14)) == "%%matrixmarket" ? GraphFormat::MatrixMarket
                                                           : GraphFormat::EdgeList;
  }
  return format == GraphFormat::MatrixMarket ? parse_matrix_market(text) : parse_edge_list(text);
}

Graph load_graph(const std::filesystem::path& path, GraphFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read graph file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str(), format);
}

std::string write_edge_list(const Graph& g) {
  std::string out = "# nodes " + std::to_string(g.node_count()) + "\n";
  out.reserve(g.edge_count() * 12 + out.size());
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

}  // namespace tfdp
