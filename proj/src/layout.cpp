#include "tfdp/layout.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "tfdp/errors.hpp"

namespace tfdp {

BoundingBox bounding_box(const Layout& layout) {
  if (layout.positions.empty()) throw ArgumentError("bounding box of an empty layout");
  BoundingBox box{layout[0], layout[0]};
  for (const Vec2& p : layout.positions) {
    box.min.x = std::min(box.min.x, p.x);
    box.min.y = std::min(box.min.y, p.y);
    box.max.x = std::max(box.max.x, p.x);
    box.max.y = std::max(box.max.y, p.y);
  }
  return box;
}

bool all_finite(const Layout& layout) noexcept {
  return std::all_of(layout.positions.begin(), layout.positions.end(),
                     [](Vec2 p) { return is_finite(p); });
}

namespace {

void append_double(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

}  // namespace

std::string write_layout_csv(const Layout& layout) {
  std::string out = "id,x,y\n";
  out.reserve(layout.size() * 48);
  for (std::size_t i = 0; i < layout.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    append_double(out, layout[i].x);
    out += ',';
    append_double(out, layout[i].y);
    out += '\n';
  }
  return out;
}

void write_layout_csv(std::ostream& out, const Layout& layout) { out << write_layout_csv(layout); }

Layout parse_layout_csv(std::string_view text) {
  std::vector<std::pair<std::size_t, Vec2>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line_no == 1 && line.starts_with("id")) continue;

    std::string_view fields[3];
    std::size_t start = 0;
    for (int f = 0; f < 3; ++f) {
      const std::size_t comma = line.find(',', start);
      if (f < 2 && comma == std::string_view::npos) throw ParseError(line_no, "expected id,x,y");
      fields[f] = line.substr(start, f < 2 ? comma - start : std::string_view::npos);
      start = comma + 1;
    }
    std::size_t id = 0;
    Vec2 p;
    auto parse = [&](std::string_view s, auto& value) {
      while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
      while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(line_no, "bad field '" + std::string(s) + "'");
      }
    };
    parse(fields[0], id);
    parse(fields[1], p.x);
    parse(fields[2], p.y);
    rows.emplace_back(id, p);
  }

  Layout layout;
  layout.positions.resize(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (const auto& [id, p] : rows) {
    if (id >= rows.size() || seen[id]) {
      throw ParseError(0, "node ids must cover 0.." + std::to_string(rows.size() - 1) + " exactly once");
    }
    seen[id] = true;
    layout[id] = p;
  }
  return layout;
}

Layout load_layout_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read layout file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_layout_csv(buf.str());
}

}  // namespace tfdp
