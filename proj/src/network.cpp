#include "matchkit/network.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace matchkit {

Network::Network(std::vector<Point> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), adjacency_(vertices_.size()) {
  const int n = static_cast<int>(vertices_.size());
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    const Edge& ed = edges_[e];
    if (ed.u == ed.v || ed.u < 0 || ed.v >= n) continue;
    adjacency_[ed.u].push_back({ed.v, e});
    adjacency_[ed.v].push_back({ed.u, e});
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end(), [](const Neighbor& x, const Neighbor& y) {
      return x.vertex != y.vertex ? x.vertex < y.vertex : x.edge < y.edge;
    });
    adj.erase(std::unique(adj.begin(), adj.end(),
                          [](const Neighbor& x, const Neighbor& y) { return x.vertex == y.vertex; }),
              adj.end());
  }
}

int Network::edge_between(int a, int b) const {
  if (a < 0 || b < 0 || a >= static_cast<int>(adjacency_.size())) return -1;
  const auto& adj = adjacency_[a];
  auto it = std::lower_bound(adj.begin(), adj.end(), b,
                             [](const Neighbor& x, int v) { return x.vertex < v; });
  return (it != adj.end() && it->vertex == b) ? it->edge : -1;
}

int NetworkBuilder::add_vertex(const Point& p) {
  const auto key = std::make_pair(p.x(), p.y());
  auto it = by_coord_.find(key);
  if (it != by_coord_.end()) return it->second;
  const int id = static_cast<int>(vertices_.size());
  vertices_.push_back(p);
  by_coord_.emplace(key, id);
  return id;
}

int NetworkBuilder::add_edge(int a, int b) {
  if (a == b) throw InputError("self-loop edge at vertex " + std::to_string(a));
  const Edge e(a, b);
  auto it = by_edge_.find(e);
  if (it != by_edge_.end()) return it->second;
  const int id = static_cast<int>(edges_.size());
  edges_.push_back(e);
  by_edge_.emplace(e, id);
  return id;
}

int NetworkBuilder::find_vertex(const Point& p) const {
  auto it = by_coord_.find({p.x(), p.y()});
  return it == by_coord_.end() ? -1 : it->second;
}

std::vector<Violation> validate(const Network& net) {
  using Kind = Violation::Kind;
  std::vector<Violation> out;
  const int n = static_cast<int>(net.vertex_count());
  const auto& verts = net.vertices();
  const auto& edges = net.edges();

  std::map<std::pair<double, double>, int> seen;
  for (int i = 0; i < n; ++i) {
    auto [it, inserted] = seen.emplace(std::make_pair(verts[i].x(), verts[i].y()), i);
    if (!inserted) {
      out.push_back({Kind::DuplicateVertex, it->second, i,
                     "vertices " + std::to_string(it->second) + " and " + std::to_string(i) + " coincide"});
    }
  }

  std::map<Edge, int> first_use;
  std::vector<int> good;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    const Edge& ed = edges[e];
    if (ed.u < 0 || ed.v >= n) {
      out.push_back({Kind::BadIndex, e, -1, "edge " + std::to_string(e) + " references a missing vertex"});
      continue;
    }
    if (ed.u == ed.v) {
      out.push_back({Kind::SelfLoop, e, -1, "edge " + std::to_string(e) + " is a self-loop"});
      continue;
    }
    auto [it, inserted] = first_use.emplace(ed, e);
    if (!inserted) {
      out.push_back({Kind::DuplicateEdge, it->second, e,
                     "edges " + std::to_string(it->second) + " and " + std::to_string(e) + " join the same vertices"});
      continue;
    }
    if (verts[ed.u] == verts[ed.v]) {
      out.push_back({Kind::DegenerateEdge, e, -1, "edge " + std::to_string(e) + " has zero length"});
      continue;
    }
    good.push_back(e);
  }

  // Sweep over x-extents so only nearby edge pairs are classified.
  std::vector<std::pair<double, double>> extent(edges.size());
  for (int e : good) {
    const Segment s = net.segment(e);
    extent[e] = {std::min(s.a.x(), s.b.x()), std::max(s.a.x(), s.b.x())};
  }
  std::sort(good.begin(), good.end(), [&](int x, int y) { return extent[x].first < extent[y].first; });
  std::vector<std::pair<int, int>> crossings;
  for (std::size_t i = 0; i < good.size(); ++i) {
    const int e1 = good[i];
    const Segment s1 = net.segment(e1);
    const double y1lo = std::min(s1.a.y(), s1.b.y()), y1hi = std::max(s1.a.y(), s1.b.y());
    for (std::size_t j = i + 1; j < good.size(); ++j) {
      const int e2 = good[j];
      if (extent[e2].first > extent[e1].second + kTolerance) break;
      const Segment s2 = net.segment(e2);
      if (std::min(s2.a.y(), s2.b.y()) > y1hi + kTolerance || std::max(s2.a.y(), s2.b.y()) < y1lo - kTolerance) continue;
      const Intersection hit = classify_intersection(s1, s2);
      if (hit.kind == IntersectionKind::Disjoint) continue;
      const Edge& a = edges[e1];
      const Edge& b = edges[e2];
      int shared = -1;
      if (a.u == b.u || a.u == b.v) shared = a.u;
      if (a.v == b.u || a.v == b.v) shared = a.v;
      const bool ok = hit.kind == IntersectionKind::Point && hit.at_endpoints_only && shared >= 0 &&
                      (hit.where - verts[shared]).norm() <= kTolerance;
      if (!ok) crossings.emplace_back(std::min(e1, e2), std::max(e1, e2));
    }
  }
  std::sort(crossings.begin(), crossings.end());
  for (auto [e1, e2] : crossings) {
    out.push_back({Kind::Crossing, e1, e2,
                   "edges " + std::to_string(e1) + " and " + std::to_string(e2) + " meet away from a shared vertex"});
  }
  return out;
}

void check_walk(const Network& net, const Walk& w) {
  const auto& ids = w.vertex_ids;
  if (ids.size() < 2) throw InputError("walk needs at least one edge");
  const int n = static_cast<int>(net.vertex_count());
  for (int id : ids) {
    if (id < 0 || id >= n) throw InputError("walk references missing vertex " + std::to_string(id));
  }
  for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
    if (net.edge_between(ids[i], ids[i + 1]) < 0) {
      throw InputError("walk steps along a missing edge " + std::to_string(ids[i]) + "-" + std::to_string(ids[i + 1]));
    }
  }
  if (w.shape == WalkShape::Cycle && net.edge_between(ids.back(), ids.front()) < 0) {
    throw InputError("cycle has no closing edge");
  }
}

bool is_simple_walk(const Network& net, const Walk& w, Simplicity mode) {
  check_walk(net, w);
  const auto& ids = w.vertex_ids;
  const std::size_t steps = w.edge_count();
  std::set<int> used_edges;
  for (std::size_t i = 0; i < steps; ++i) {
    const int e = net.edge_between(ids[i], ids[(i + 1) % ids.size()]);
    if (!used_edges.insert(e).second) return false;
  }
  if (mode == Simplicity::Edge) return true;
  std::set<int> used_vertices(ids.begin(), ids.end());
  return used_vertices.size() == ids.size();
}

Polyline curve_of_walk(const Network& net, const Walk& w) {
  check_walk(net, w);
  Polyline c;
  c.closed = w.shape == WalkShape::Cycle;
  c.points.reserve(w.vertex_ids.size());
  for (int id : w.vertex_ids) c.points.push_back(net.vertex(id));
  return c;
}

}  // namespace matchkit
