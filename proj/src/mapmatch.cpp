#include "matchkit/mapmatch.hpp"

#include "matchkit/detail/curve_index.hpp"
#include "matchkit/detail/weak_frontier.hpp"

#include <cmath>
#include <deque>
#include <set>

namespace matchkit {

namespace {

using detail::CurveIndex;
using detail::WeakFrontier;
using detail::WeakState;

/// Reach sets over all vertices after at least one edge, starting from
/// `start` (the parameters at which a walk may sit before moving).
std::vector<IntervalSet> strong_fixpoint(const CurveIndex& index, const std::vector<IntervalSet>& start) {
  const Network& net = index.network();
  const int nv = static_cast<int>(net.vertex_count());
  std::vector<IntervalSet> reach(nv);
  std::deque<int> work;
  std::vector<char> queued(nv, 0);
  for (int v = 0; v < nv; ++v) {
    if (!start[v].empty()) {
      work.push_back(v);
      queued[v] = 1;
    }
  }
  while (!work.empty()) {
    const int u = work.front();
    work.pop_front();
    queued[u] = 0;
    IntervalSet src = start[u];
    src.unite(reach[u]);
    for (const Neighbor& nb : net.neighbors(u)) {
      IntervalSet next = index.propagate(u, nb.vertex, src);
      if (next.empty()) continue;
      IntervalSet merged = reach[nb.vertex];
      merged.unite(next);
      if (merged == reach[nb.vertex]) continue;
      reach[nb.vertex] = std::move(merged);
      if (!queued[nb.vertex]) {
        work.push_back(nb.vertex);
        queued[nb.vertex] = 1;
      }
    }
  }
  return reach;
}

bool strong_path(const Network& net, const Polyline& c, double eps) {
  const CurveIndex index(net, c, eps, 1);
  const double n = index.span();
  std::vector<IntervalSet> start(net.vertex_count());
  for (int v = 0; v < static_cast<int>(net.vertex_count()); ++v) {
    if (!index.vertex_free(v).contains(0.0)) continue;
    IntervalSet s;
    s.push_sorted({0.0, 0.0});
    start[v] = index.extend(v, s);
  }
  const auto reach = strong_fixpoint(index, start);
  for (const auto& r : reach) {
    if (r.contains(n)) return true;
  }
  return false;
}

bool strong_cycle(const Network& net, const Polyline& c, double eps) {
  const CurveIndex index(net, c, eps, 2);
  const int nv = static_cast<int>(net.vertex_count());
  const int n = index.segments();
  for (int v0 = 0; v0 < nv; ++v0) {
    const IntervalSet lap = index.vertex_free(v0).clipped({0.0, double(n)});
    for (const UnitInterval& iv : lap.parts()) {
      // The set reachable from (v0, s) shrinks as s grows and only changes
      // where s passes the end of some vertex's free interval, so the
      // right end of each constant piece is the only start worth trying.
      std::set<double> candidates{iv.hi};
      const int j_lo = static_cast<int>(std::floor(iv.lo));
      const int j_hi = std::min(n - 1, static_cast<int>(std::floor(iv.hi)));
      for (int x = 0; x < nv; ++x) {
        for (int j = j_lo; j <= j_hi; ++j) {
          const UnitInterval f = index.vertex_column(x, j);
          if (f.empty()) continue;
          const double h = j + f.hi;
          if (h >= iv.lo && h <= iv.hi) candidates.insert(h);
        }
      }
      for (double s : candidates) {
        std::vector<IntervalSet> start(nv);
        IntervalSet p;
        p.push_sorted({s, s});
        start[v0] = index.extend(v0, p);
        const auto reach = strong_fixpoint(index, start);
        if (reach[v0].contains(s + n)) return true;
      }
    }
  }
  return false;
}

/// All labels connected to the origin are one component.
WeakState canonical(WeakState s) {
  std::vector<int> remap(s.origin.size(), -1);
  std::vector<char> origin;
  int origin_label = -1;
  for (int& l : s.label) {
    if (remap[l] < 0) {
      if (s.origin[l] && origin_label >= 0) {
        remap[l] = origin_label;
      } else {
        remap[l] = static_cast<int>(origin.size());
        origin.push_back(s.origin[l]);
        if (s.origin[l]) origin_label = remap[l];
      }
    }
    l = remap[l];
  }
  s.origin = std::move(origin);
  return s;
}

/// Breadth-first search over (vertex, frontier state). `accept` is asked
/// after every step.
template <class Accept>
bool weak_search(const Network& net, const WeakFrontier& frontier, int v0, const WeakState& init, Accept accept) {
  std::set<std::pair<int, WeakState>> seen;
  std::deque<std::pair<int, WeakState>> work;
  work.emplace_back(v0, canonical(init));
  seen.insert(work.back());
  while (!work.empty()) {
    auto [u, state] = work.front();
    work.pop_front();
    for (const Neighbor& nb : net.neighbors(u)) {
      WeakState next;
      if (!frontier.step(u, nb.vertex, nb.edge, state, next)) continue;
      if (accept(nb.vertex, next)) return true;
      auto key = std::make_pair(nb.vertex, canonical(std::move(next)));
      if (seen.insert(key).second) work.push_back(std::move(key));
    }
  }
  return false;
}

bool weak_path(const Network& net, const Polyline& c, double eps) {
  const CurveIndex index(net, c, eps, 1);
  const WeakFrontier frontier(index, false);
  const double n = index.span();
  for (int v0 = 0; v0 < static_cast<int>(net.vertex_count()); ++v0) {
    if (!index.vertex_free(v0).contains(0.0)) continue;
    std::vector<char> origin(frontier.component_count(v0), 0);
    origin[frontier.component_of(v0, 0.0)] = 1;
    auto accept = [&](int w, const WeakState& s) {
      const int comp = frontier.component_of(w, n);
      return comp >= 0 && s.origin[s.label[comp]];
    };
    if (weak_search(net, frontier, v0, frontier.initial(v0, origin), accept)) return true;
  }
  return false;
}

/// The curve is unrolled three times and a start taken in the middle lap;
/// the walk has to connect it to the same point one lap later.
bool weak_cycle(const Network& net, const Polyline& c, double eps) {
  const CurveIndex index(net, c, eps, 3);
  const WeakFrontier frontier(index, false);
  const double n = index.segments();
  for (int v0 = 0; v0 < static_cast<int>(net.vertex_count()); ++v0) {
    const IntervalSet lap = index.vertex_free(v0).clipped({n, 2 * n});
    for (const UnitInterval& iv : lap.parts()) {
      const int from = frontier.component_of(v0, iv.lo);
      const int to = frontier.component_of(v0, iv.lo + n);
      std::vector<char> origin(frontier.component_count(v0), 0);
      origin[from] = 1;
      auto accept = [&](int w, const WeakState& s) { return w == v0 && s.origin[s.label[to]]; };
      if (weak_search(net, frontier, v0, frontier.initial(v0, origin), accept)) return true;
    }
  }
  return false;
}

}  // namespace

bool decide_graph_match(const Network& net, const Polyline& c, double eps, Monotonicity monotonicity,
                        WalkShape shape) {
  check_polyline(c);
  if (!(eps >= 0)) throw InputError("eps must be non-negative");
  if ((shape == WalkShape::Cycle) != c.closed) throw InputError("walk shape does not match curve topology");
  const bool weak = monotonicity == Monotonicity::Weak;
  if (shape == WalkShape::Path) return weak ? weak_path(net, c, eps) : strong_path(net, c, eps);
  return weak ? weak_cycle(net, c, eps) : strong_cycle(net, c, eps);
}

}  // namespace matchkit
