#include "tfdp/knn.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <utility>

namespace tfdp {

namespace {

using Candidate = std::pair<double, NodeId>;  // (squared distance, id), lexicographic

}  // namespace

KnnIndex::KnnIndex(const Layout& layout) : layout_(layout) {
  const std::size_t n = layout.size();
  if (n == 0) return;
  const BoundingBox box = bounding_box(layout);
  origin_ = box.min;
  const double w = box.width(), h = box.height();
  const double area = std::max(w * h, 1e-300);
  // About two points per cell.
  cell_ = std::sqrt(2.0 * area / static_cast<double>(n));
  if (!(cell_ > 0.0) || !std::isfinite(cell_)) cell_ = std::max({w, h, 1.0});
  cell_ = std::max(cell_, std::max(w, h) / 4096.0);
  if (!(cell_ > 0.0)) cell_ = 1.0;
  cols_ = static_cast<std::size_t>(w / cell_) + 1;
  rows_ = static_cast<std::size_t>(h / cell_) + 1;

  std::vector<std::size_t> cell_of(n);
  cell_start_.assign(cols_ * rows_ + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto cx = std::min(cols_ - 1, static_cast<std::size_t>((layout[i].x - origin_.x) / cell_));
    const auto cy = std::min(rows_ - 1, static_cast<std::size_t>((layout[i].y - origin_.y) / cell_));
    cell_of[i] = cy * cols_ + cx;
    ++cell_start_[cell_of[i] + 1];
  }
  for (std::size_t c = 1; c < cell_start_.size(); ++c) cell_start_[c] += cell_start_[c - 1];
  cell_nodes_.resize(n);
  std::vector<std::size_t> cursor(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < n; ++i) cell_nodes_[cursor[cell_of[i]]++] = static_cast<NodeId>(i);
}

void KnnIndex::query(NodeId node, std::size_t k, std::vector<NodeId>& out) const {
  out.clear();
  const std::size_t n = layout_.size();
  k = std::min(k, n > 0 ? n - 1 : 0);
  if (k == 0) return;
  const Vec2 p = layout_[node];
  const auto cx = static_cast<std::int64_t>(
      std::min(cols_ - 1, static_cast<std::size_t>((p.x - origin_.x) / cell_)));
  const auto cy = static_cast<std::int64_t>(
      std::min(rows_ - 1, static_cast<std::size_t>((p.y - origin_.y) / cell_)));

  std::priority_queue<Candidate> best;  // max-heap keeps the current k nearest
  auto visit = [&](std::int64_t x, std::int64_t y) {
    if (x < 0 || y < 0 || x >= static_cast<std::int64_t>(cols_) || y >= static_cast<std::int64_t>(rows_)) return;
    const auto c = static_cast<std::size_t>(y) * cols_ + static_cast<std::size_t>(x);
    for (std::size_t s = cell_start_[c]; s < cell_start_[c + 1]; ++s) {
      const NodeId j = cell_nodes_[s];
      if (j == node) continue;
      const Candidate cand{norm2(layout_[j] - p), j};
      if (best.size() < k) {
        best.push(cand);
      } else if (cand < best.top()) {
        best.pop();
        best.push(cand);
      }
    }
  };

  const auto max_ring = static_cast<std::int64_t>(std::max(cols_, rows_));
  for (std::int64_t r = 0; r <= max_ring; ++r) {
    if (r == 0) {
      visit(cx, cy);
    } else {
      for (std::int64_t x = cx - r; x <= cx + r; ++x) {
        visit(x, cy - r);
        visit(x, cy + r);
      }
      for (std::int64_t y = cy - r + 1; y <= cy + r - 1; ++y) {
        visit(cx - r, y);
        visit(cx + r, y);
      }
    }
    // Unvisited points lie at least r cells away; strict bound keeps id tie-breaks exact.
    const double reach = static_cast<double>(r) * cell_;
    if (best.size() == k && best.top().first < reach * reach) break;
  }

  out.resize(best.size());
  for (std::size_t i = best.size(); i-- > 0;) {
    out[i] = best.top().second;
    best.pop();
  }
}

namespace reference {

void knn_brute_force(const Layout& layout, NodeId node, std::size_t k, std::vector<NodeId>& out) {
  std::vector<Candidate> all;
  all.reserve(layout.size());
  for (std::size_t j = 0; j < layout.size(); ++j) {
    if (j == node) continue;
    all.emplace_back(norm2(layout[j] - layout[node]), static_cast<NodeId>(j));
  }
  std::sort(all.begin(), all.end());
  out.clear();
  for (std::size_t i = 0; i < std::min(k, all.size()); ++i) out.push_back(all[i].second);
}

}  // namespace reference

}  // namespace tfdp
