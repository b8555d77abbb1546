#include "matchkit/detail/weak_frontier.hpp"

#include "matchkit/detail/union_find.hpp"

#include <algorithm>

namespace matchkit::detail {

bool WeakFrontier::wraps(int v) const {
  if (!seam_) return false;
  const auto& parts = index_.vertex_free(v).parts();
  return parts.size() >= 2 && parts.front().lo <= 0.0 && parts.back().hi >= index_.span();
}

int WeakFrontier::component_count(int v) const {
  const int k = static_cast<int>(index_.vertex_free(v).parts().size());
  return wraps(v) ? k - 1 : k;
}

int WeakFrontier::component_of(int v, double t) const {
  const int k = index_.vertex_free(v).index_of(t);
  if (k < 0) return -1;
  if (wraps(v) && k == component_count(v)) return 0;
  return k;
}

WeakState WeakFrontier::initial(int v, const std::vector<char>& origin) const {
  WeakState s;
  const int k = component_count(v);
  s.label.resize(k);
  s.origin.assign(origin.begin(), origin.end());
  s.origin.resize(k, 0);
  for (int c = 0; c < k; ++c) s.label[c] = c;
  return s;
}

bool WeakFrontier::step(int u, int w, int edge, const WeakState& in, WeakState& out) const {
  const int cu = static_cast<int>(in.label.size());
  const int cw = component_count(w);
  if (cw == 0) return false;
  const auto& near = index_.edge_columns(edge);
  if (near.empty()) return false;
  const int n = index_.segments();
  const int laps = static_cast<int>(index_.span()) / n;
  std::vector<int> cols;
  cols.reserve(near.size() * laps);
  for (int rep = 0; rep < laps; ++rep) {
    for (int j : near) cols.push_back(j + rep * n);
  }
  const int total = laps * n;
  const int cells = static_cast<int>(cols.size());
  UnionFind uf(cu + cw + cells);
  std::vector<int> first_with_label(cu, -1);
  for (int c = 0; c < cu; ++c) {
    int& f = first_with_label[in.label[c]];
    if (f < 0) f = c;
    else uf.unite(f, c);
  }
  const Segment seg{index_.network().vertex(u), index_.network().vertex(w)};
  for (int k = 0; k < cells; ++k) {
    const int j = cols[k];
    const int cell = cu + cw + k;
    const UnitInterval b = index_.vertex_column(u, j);
    if (!b.empty()) uf.unite(cell, component_of(u, j + b.lo));
    const UnitInterval t = index_.vertex_column(w, j);
    if (!t.empty()) uf.unite(cell, cu + component_of(w, j + t.lo));
    int kn = -1;
    if (k + 1 < cells && cols[k + 1] == j + 1) kn = k + 1;
    else if (seam_ && j + 1 == total && cols.front() == 0) kn = 0;
    if (kn >= 0 && !free_interval(seg, index_.curve().vertex(j + 1), index_.eps()).empty()) {
      uf.unite(cell, cu + cw + kn);
    }
  }
  std::vector<char> root_origin(uf.parent.size(), 0);
  for (int c = 0; c < cu; ++c) {
    if (in.origin[in.label[c]]) root_origin[uf.find(c)] = 1;
  }
  out.label.assign(cw, -1);
  out.origin.clear();
  std::vector<int> label_of_root(uf.parent.size(), -1);
  bool any_origin = false;
  for (int c = 0; c < cw; ++c) {
    const int r = uf.find(cu + c);
    if (label_of_root[r] < 0) {
      label_of_root[r] = static_cast<int>(out.origin.size());
      out.origin.push_back(root_origin[r]);
      any_origin = any_origin || root_origin[r];
    }
    out.label[c] = label_of_root[r];
  }
  return any_origin;
}

}  // namespace matchkit::detail

namespace matchkit::detail {

bool WeakFrontier::full(int v) const {
  const auto& parts = index_.vertex_free(v).parts();
  return parts.size() == 1 && parts.front().lo <= 0.0 && parts.front().hi >= index_.span();
}

int WeakFrontier::lift_of(int v, double t) const {
  if (!wraps(v)) return 0;
  const int k = index_.vertex_free(v).index_of(t);
  return k == component_count(v) ? 1 : 0;
}

LiftedState WeakFrontier::initial_lifted(int v, int c0) const {
  LiftedState s;
  const int k = component_count(v);
  for (int c = 0; c < k; ++c) {
    s.cls.push_back(c);
    s.off.push_back(0);
    s.period.push_back(full(v) ? 1 : 0);
    s.origin.push_back(c == c0);
    s.origin_off.push_back(0);
  }
  return s;
}

bool WeakFrontier::closes(const LiftedState& s, int c) {
  const int k = s.cls[c];
  if (!s.origin[k]) return false;
  const int d = s.off[c] - s.origin_off[k] - 1;
  const int p = s.period[k];
  return p == 0 ? d == 0 : d % p == 0;
}

bool WeakFrontier::step_lifted(int u, int w, int edge, const LiftedState& in, LiftedState& out) const {
  const int cu = static_cast<int>(in.cls.size());
  const int cw = component_count(w);
  if (cw == 0) return false;
  const auto& cols = index_.edge_columns(edge);
  if (cols.empty()) return false;
  const int n = index_.segments();
  const int cells = static_cast<int>(cols.size());
  // Nodes: components of u, components of w, cells, then the origin.
  const int origin = cu + cw + cells;
  PeriodicUnionFind uf(origin + 1);
  auto up = [](int k) { return Offset(0, k); };

  std::vector<int> first(in.period.size(), -1);
  for (int c = 0; c < cu; ++c) {
    const int k = in.cls[c];
    if (first[k] < 0) {
      first[k] = c;
      if (in.period[k] != 0) uf.unite(c, c, up(in.period[k]));
      if (in.origin[k]) uf.unite(c, origin, up(in.origin_off[k]));
    } else {
      uf.unite(first[k], c, up(in.off[c] - in.off[first[k]]));
    }
  }
  for (int c = 0; c < cw; ++c) {
    if (full(w)) uf.unite(cu + c, cu + c, up(1));
  }
  const Segment seg{index_.network().vertex(u), index_.network().vertex(w)};
  for (int k = 0; k < cells; ++k) {
    const int j = cols[k];
    const int cell = cu + cw + k;
    const UnitInterval b = index_.vertex_column(u, j);
    if (!b.empty()) uf.unite(cell, component_of(u, j + b.lo), up(lift_of(u, j + b.lo)));
    const UnitInterval t = index_.vertex_column(w, j);
    if (!t.empty()) uf.unite(cell, cu + component_of(w, j + t.lo), up(lift_of(w, j + t.lo)));
    int kn = -1, wrap = 0;
    if (k + 1 < cells && cols[k + 1] == j + 1) {
      kn = k + 1;
    } else if (j + 1 == n && cols.front() == 0) {
      kn = 0;
      wrap = 1;
    }
    if (kn >= 0 && !free_interval(seg, index_.curve().vertex(j + 1), index_.eps()).empty()) {
      uf.unite(cell, cu + cw + kn, up(wrap));
    }
  }

  out = LiftedState{};
  out.cls.assign(cw, -1);
  out.off.assign(cw, 0);
  const auto [origin_root, origin_pos] = uf.find(origin);
  std::vector<int> roots;
  std::vector<int> rep_pos;
  bool any = false;
  for (int c = 0; c < cw; ++c) {
    const auto [r, pos] = uf.find(cu + c);
    int k = static_cast<int>(std::find(roots.begin(), roots.end(), r) - roots.begin());
    if (k == static_cast<int>(roots.size())) {
      roots.push_back(r);
      rep_pos.push_back(pos.y());
      out.period.push_back(uf.lattice(r).vertical_period());
      const bool o = r == origin_root;
      out.origin.push_back(o);
      out.origin_off.push_back(o ? origin_pos.y() - pos.y() : 0);
      any = any || o;
    }
    out.cls[c] = k;
    out.off[c] = pos.y() - rep_pos[k];
  }
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const int p = out.period[k];
    if (p == 0) continue;
    out.origin_off[k] = ((out.origin_off[k] % p) + p) % p;
  }
  for (int c = 0; c < cw; ++c) {
    const int p = out.period[out.cls[c]];
    if (p != 0) out.off[c] = ((out.off[c] % p) + p) % p;
  }
  return any;
}

}  // namespace matchkit::detail
