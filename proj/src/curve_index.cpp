#include "matchkit/detail/curve_index.hpp"

#include <algorithm>
#include <cmath>

namespace matchkit::detail {

CurveIndex::CurveIndex(const Network& net, const Polyline& curve, double eps, int unroll)
    : net_(net),
      curve_(curve),
      eps_(eps),
      n_(static_cast<int>(curve.segment_count())),
      unroll_(unroll),
      vertex_columns_(net.vertex_count()),
      vertex_free_(net.vertex_count()),
      edge_columns_(net.edge_count()),
      edge_columns_ready_(net.edge_count(), 0) {
  std::vector<Eigen::AlignedBox2d> boxes(n_);
  for (int j = 0; j < n_; ++j) {
    const Segment s = curve_.segment(j);
    boxes[j].extend(s.a);
    boxes[j].extend(s.b);
    boxes[j].min().array() -= eps + 1e-6;
    boxes[j].max().array() += eps + 1e-6;
  }
  for (int v = 0; v < static_cast<int>(net.vertex_count()); ++v) {
    const Point& p = net.vertex(v);
    auto& cols = vertex_columns_[v];
    for (int j = 0; j < n_; ++j) {
      if (!boxes[j].contains(p)) continue;
      const UnitInterval iv = free_interval(curve_.segment(j), p, eps);
      if (!iv.empty()) cols.emplace_back(j, iv);
    }
    IntervalSet& fs = vertex_free_[v];
    for (int rep = 0; rep < unroll_; ++rep) {
      for (const auto& [j, iv] : cols) {
        const double base = static_cast<double>(j + rep * n_);
        fs.push_sorted({base + iv.lo, base + iv.hi});
      }
    }
  }
}

UnitInterval CurveIndex::vertex_column(int v, int j) const {
  const int col = j % n_;
  const auto& cols = vertex_columns_[v];
  auto it = std::lower_bound(cols.begin(), cols.end(), col,
                             [](const std::pair<int, UnitInterval>& x, int c) { return x.first < c; });
  if (it == cols.end() || it->first != col) return UnitInterval::empty_interval();
  return it->second;
}

IntervalSet CurveIndex::extend(int v, const IntervalSet& reach) const {
  const IntervalSet& fs = vertex_free_[v];
  IntervalSet out;
  for (const auto& iv : reach.parts()) {
    const int k = fs.index_of(iv.lo);
    if (k < 0) continue;
    out.push_sorted({iv.lo, fs.parts()[k].hi});
  }
  return out;
}

IntervalSet CurveIndex::propagate(int from, int to, const IntervalSet& reach) const {
  IntervalSet out;
  if (reach.empty() || vertex_free_[to].empty()) return out;
  const Segment seg{net_.vertex(from), net_.vertex(to)};
  const int cols = n_ * unroll_;
  const auto& parts = reach.parts();
  std::size_t next = 0;  // first reach part not yet fully consumed
  UnitInterval left = UnitInterval::empty_interval();
  int j = static_cast<int>(std::floor(parts.front().lo));
  if (j >= cols) j = cols - 1;
  while (j < cols) {
    // Lowest reachable bottom point in column j.
    while (next < parts.size() && parts[next].hi < j) ++next;
    double bottom = -1;
    if (next < parts.size() && parts[next].lo <= j + 1) bottom = std::max(parts[next].lo, double(j)) - j;
    if (left.empty() && bottom < 0) {
      if (next >= parts.size()) break;
      j = std::max(j + 1, static_cast<int>(std::floor(parts[next].lo)));
      continue;
    }
    const UnitInterval top_free = vertex_column(to, j);
    UnitInterval top = UnitInterval::empty_interval();
    if (!left.empty()) {
      top = top_free;
    } else {
      top = intersect(top_free, UnitInterval{bottom, 1.0});
    }
    if (!top.empty()) out.push_sorted({j + top.lo, j + top.hi});
    const UnitInterval right_free = free_interval(seg, curve_.vertex(j + 1), eps_);
    const UnitInterval right = bottom >= 0 ? right_free : intersect(right_free, UnitInterval{left.lo, 1.0});
    left = right;
    ++j;
  }
  return extend(to, out);
}

const std::vector<int>& CurveIndex::edge_columns(int e) const {
  if (!edge_columns_ready_[e]) {
    const Segment s = net_.segment(e);
    auto& cols = edge_columns_[e];
    for (int j = 0; j < n_; ++j) {
      if (dist_segment_segment(s, curve_.segment(j)) <= eps_ + kTolerance) cols.push_back(j);
    }
    edge_columns_ready_[e] = 1;
  }
  return edge_columns_[e];
}

}  // namespace matchkit::detail
