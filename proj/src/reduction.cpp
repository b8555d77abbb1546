#include "matchkit/reduction.hpp"

#include <algorithm>
#include <cmath>

namespace matchkit {

namespace {

constexpr double kTol = 1e-9;

bool same(const Point& a, const Point& b) { return (a - b).norm() <= kTol; }

Point P(double x, double y) { return Point(x, y); }

Point transposed(const Point& p) { return Point(p.y(), p.x()); }

void transpose(Gadget& g) {
  for (auto& s : g.network) s = Segment{transposed(s.a), transposed(s.b)};
  for (auto& p : g.curve.points) p = transposed(p);
  for (auto& p : g.gates) p = transposed(p);
  for (auto& port : g.ports) port.edge = Segment{transposed(port.edge.a), transposed(port.edge.b)};
  for (auto& p : g.boundary) p = transposed(p);
  std::reverse(g.boundary.begin(), g.boundary.end());
}

/// Adds point p to the polyline unless it repeats the last point or lies on
/// the line through the last two points in the same direction.
void push_curve(Polyline& c, const Point& p) {
  auto& pts = c.points;
  if (!pts.empty() && same(pts.back(), p)) return;
  if (pts.size() >= 2) {
    const Point a = pts[pts.size() - 2], b = pts.back();
    const Point u = b - a, v = p - b;
    if (std::abs(u.x() * v.y() - u.y() * v.x()) <= kTol && u.dot(v) > 0) {
      pts.back() = p;
      return;
    }
  }
  pts.push_back(p);
}

void add(std::vector<Segment>& net, const Point& a, const Point& b) { net.push_back(Segment{a, b}); }

/// Axis-parallel rectangle with its sides split at the given points.
void add_rect(std::vector<Segment>& net, double x0, double y0, double x1, double y1,
              std::vector<Point> splits = {}) {
  const Point c[4] = {P(x0, y0), P(x1, y0), P(x1, y1), P(x0, y1)};
  for (int s = 0; s < 4; ++s) {
    const Point a = c[s], b = c[(s + 1) % 4];
    std::vector<std::pair<double, Point>> on;
    for (const Point& p : splits) {
      const double len = (b - a).norm();
      const double t = (p - a).dot(b - a) / (len * len);
      if (t > kTol && t < 1 - kTol && (a + t * (b - a) - p).norm() <= kTol) on.emplace_back(t, p);
    }
    std::sort(on.begin(), on.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    Point prev = a;
    for (const auto& [t, p] : on) {
      add(net, prev, p);
      prev = p;
    }
    add(net, prev, b);
  }
}

void erase_segment(std::vector<Segment>& net, const Point& a, const Point& b) {
  net.erase(std::remove_if(net.begin(), net.end(),
                           [&](const Segment& s) {
                             return (same(s.a, a) && same(s.b, b)) || (same(s.a, b) && same(s.b, a));
                           }),
            net.end());
}

std::vector<Point> box_polygon(double x0, double y0, double x1, double y1) {
  return {P(x0, y0), P(x1, y0), P(x1, y1), P(x0, y1)};
}

// Point-in-polygon for closed rectilinear polygons, boundary inclusive.
bool on_boundary(const std::vector<Point>& poly, const Point& p) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (dist_point_segment(p, Segment{poly[i], poly[(i + 1) % poly.size()]}) <= kTol) return true;
  }
  return false;
}

bool inside_or_on(const std::vector<Point>& poly, const Point& p) {
  if (on_boundary(poly, p)) return true;
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point& a = poly[i];
    const Point& b = poly[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x) in = !in;
    }
  }
  return in;
}

}  // namespace

// ---------------------------------------------------------------------------
// Gadget

Network Gadget::build_network() const {
  NetworkBuilder b;
  for (const auto& s : network) b.add_segment(s.a, s.b);
  return b.build();
}

void Gadget::translate(const Point& d) {
  for (auto& s : network) s = Segment{s.a + d, s.b + d};
  for (auto& p : curve.points) p += d;
  for (auto& p : gates) p += d;
  for (auto& port : ports) port.edge = Segment{port.edge.a + d, port.edge.b + d};
  for (auto& p : boundary) p += d;
}

void Gadget::mirror_x(double axis) {
  auto f = [axis](const Point& p) { return Point(2 * axis - p.x(), p.y()); };
  for (auto& s : network) s = Segment{f(s.a), f(s.b)};
  for (auto& p : curve.points) p = f(p);
  for (auto& p : gates) p = f(p);
  for (auto& port : ports) port.edge = Segment{f(port.edge.a), f(port.edge.b)};
  for (auto& p : boundary) p = f(p);
  std::reverse(boundary.begin(), boundary.end());
}

void Gadget::mirror_y(double axis) {
  auto f = [axis](const Point& p) { return Point(p.x(), 2 * axis - p.y()); };
  for (auto& s : network) s = Segment{f(s.a), f(s.b)};
  for (auto& p : curve.points) p = f(p);
  for (auto& p : gates) p = f(p);
  for (auto& port : ports) port.edge = Segment{f(port.edge.a), f(port.edge.b)};
  for (auto& p : boundary) p = f(p);
  std::reverse(boundary.begin(), boundary.end());
}

void Gadget::reverse_curve() {
  std::reverse(curve.points.begin(), curve.points.end());
  std::swap(gates[0], gates[1]);
}

Eigen::AlignedBox2d Gadget::bounds() const {
  Eigen::AlignedBox2d box;
  for (const auto& p : boundary) box.extend(p);
  return box;
}

std::vector<std::string> check_gadget(const Gadget& g) {
  std::vector<std::string> out;
  if (g.curve.points.size() < 2) {
    out.push_back("curve has fewer than two points");
    return out;
  }
  if (!same(g.curve.points.front(), g.gates[0]) || !same(g.curve.points.back(), g.gates[1]))
    out.push_back("curve endpoints differ from the gates");
  if (!is_simple(g.curve)) out.push_back("curve is not simple");
  NetworkBuilder b;
  for (const auto& s : g.network) b.add_segment(s.a, s.b);
  const Network net = b.build();
  for (const auto& v : validate(net)) out.push_back("network: " + v.message);
  for (const auto& p : net.vertices()) {
    if (!inside_or_on(g.boundary, p)) out.push_back("network vertex outside the bounding polygon");
  }
  for (const auto& p : g.curve.points) {
    if (!inside_or_on(g.boundary, p)) out.push_back("curve point outside the bounding polygon");
  }
  for (const auto& gate : g.gates) {
    if (!on_boundary(g.boundary, gate)) out.push_back("gate not on the boundary");
  }
  for (const auto& port : g.ports) {
    if (!on_boundary(g.boundary, port.edge.a) || !on_boundary(g.boundary, port.edge.b))
      out.push_back("port not on the boundary");
    if (std::abs(port.edge.length() - 1) > kTol) out.push_back("port is not a unit edge");
    const int u = b.find_vertex(port.edge.a), v = b.find_vertex(port.edge.b);
    if (u < 0 || v < 0 || net.edge_between(u, v) < 0)
      out.push_back("port is not a network edge");
  }
  return out;
}

GadgetPaths gadget_paths(const Gadget& g, double eps, const std::vector<bool>& removed, Monotonicity monotonicity,
                         std::size_t limit) {
  NetworkBuilder b;
  for (const auto& s : g.network) b.add_segment(s.a, s.b);
  const Network net = b.build();
  std::vector<int> port_edge;
  for (const auto& port : g.ports) {
    const int u = b.find_vertex(port.edge.a), v = b.find_vertex(port.edge.b);
    const int e = u < 0 || v < 0 ? -1 : net.edge_between(u, v);
    if (e < 0) throw ConstructionError("port is not a network edge");
    port_edge.push_back(e);
  }
  SearchOptions o;
  o.start_vertex = b.find_vertex(g.gates[0]);
  o.end_vertex = b.find_vertex(g.gates[1]);
  if (*o.start_vertex < 0 || *o.end_vertex < 0) throw ConstructionError("gate is not a network vertex");
  for (std::size_t p = 0; p < removed.size() && p < port_edge.size(); ++p) {
    if (removed[p]) o.forbidden_edges.push_back(port_edge[p]);
  }
  const MatchQuery q{Simplicity::Vertex, WalkShape::Path, monotonicity, eps};
  EnumerationResult r = enumerate_simple_matches(net, g.curve, q, o, limit);
  GadgetPaths out;
  out.status = r.status;
  for (const auto& w : r.walks) {
    std::vector<bool> use(port_edge.size(), false);
    for (std::size_t k = 0; k + 1 < w.vertex_ids.size(); ++k) {
      const int e = net.edge_between(w.vertex_ids[k], w.vertex_ids[k + 1]);
      for (std::size_t p = 0; p < port_edge.size(); ++p) use[p] = use[p] || e == port_edge[p];
    }
    out.uses.push_back(std::move(use));
  }
  out.walks = std::move(r.walks);
  return out;
}

// ---------------------------------------------------------------------------
// Blocks and chains

Gadget build_block(BlockKind kind, int span) {
  if (span != 1 && span != 2) throw InputError("block span must be 1 or 2");
  const double w = span, m = w / 2;
  Gadget g;
  add_rect(g.network, 0, 0, w, 1, {P(m, 0), P(m, 1)});
  add(g.network, P(m, -1), P(m, 0));
  add(g.network, P(m, 1), P(m, 2));
  g.curve.points = {P(m, -1), P(m, 2)};
  g.gates[0] = P(m, -1);
  g.gates[1] = P(m, 2);
  g.ports = {{Segment{P(0, 0), P(0, 1)}, PortRole::ChainEnd}, {Segment{P(w, 0), P(w, 1)}, PortRole::ChainEnd}};
  g.boundary = box_polygon(0, -1, w, 2);
  if (kind == BlockKind::Vertical) transpose(g);
  return g;
}

std::vector<int> chain_blocks(int d, Parity parity) {
  if (d < 6) throw InputError("chain length must be at least 6");
  const bool want_odd = parity == Parity::Odd;
  std::vector<int> out;
  if (d % 2 == 0) {
    const int plain = d / 2;
    if ((plain % 2 == 1) == want_odd) return std::vector<int>(plain, 2);
    out = {2, 1, 1};
    out.insert(out.end(), plain - 2, 2);
  } else {
    const int one = (d - 1) / 2 + 1;
    if ((one % 2 == 1) == want_odd) {
      out = {2, 1};
      out.insert(out.end(), (d - 3) / 2, 2);
    } else {
      out = {2, 1, 1, 1};
      out.insert(out.end(), (d - 5) / 2, 2);
    }
  }
  return out;
}

Gadget build_chain(int d, BlockKind orientation, Parity parity, Alternation alt) {
  const std::vector<int> spans = chain_blocks(d, parity);
  Gadget g;
  // Horizontal layout first; vertical chains are its transpose.
  double x = 0;
  bool up = alt == Alternation::FirstArmUp;  // side of the entering arm
  std::vector<double> mids;
  for (int w : spans) {
    const double m = x + w / 2.0;
    mids.push_back(m);
    add_rect(g.network, x, 0, x + w, 1, {P(m, 0), P(m, 1)});
    add(g.network, P(m, -1), P(m, 0));
    add(g.network, P(m, 1), P(m, 2));
    x += w;
  }
  for (std::size_t i = 0; i < mids.size(); ++i) {
    const double in = up ? 2 : -1, out = up ? -1 : 2;
    push_curve(g.curve, P(mids[i], in));
    push_curve(g.curve, P(mids[i], out));
    if (i + 1 < mids.size()) add(g.network, P(mids[i], out), P(mids[i + 1], out));
    up = !up;
  }
  g.gates[0] = g.curve.points.front();
  g.gates[1] = g.curve.points.back();
  g.ports = {{Segment{P(0, 0), P(0, 1)}, PortRole::ChainEnd}, {Segment{P(x, 0), P(x, 1)}, PortRole::ChainEnd}};
  g.boundary = box_polygon(0, -1, x, 2);
  if (orientation == BlockKind::Vertical) transpose(g);
  return g;
}

Gadget build_bend(BendKind direction) {
  if (direction == BendKind::None) throw InputError("bend needs a direction");
  Gadget g;
  // Vertical block V without its right arm.
  add_rect(g.network, 0, 0, 1, 2, {P(0, 1)});
  add(g.network, P(-1, 1), P(0, 1));
  // Horizontal block H without its bottom arm, touching V at (1,2).
  add_rect(g.network, 1, 2, 3, 3, {P(2, 3)});
  add(g.network, P(2, 3), P(2, 4));
  g.curve.points = {P(-1, 1), P(2, 1), P(2, 4)};
  g.gates[0] = P(-1, 1);
  g.gates[1] = P(2, 4);
  g.ports = {{Segment{P(0, 0), P(1, 0)}, PortRole::ChainEnd}, {Segment{P(3, 2), P(3, 3)}, PortRole::ChainEnd}};
  g.boundary = {P(-1, 0), P(1, 0), P(1, 1), P(3, 1), P(3, 4), P(-1, 4)};
  if (direction == BendKind::Left) g.mirror_x(0);
  return g;
}

// ---------------------------------------------------------------------------
// Propagation, variable and clause gadgets

namespace {

void append(Gadget& g, const Gadget& part) {
  g.network.insert(g.network.end(), part.network.begin(), part.network.end());
  for (const auto& p : part.curve.points) push_curve(g.curve, p);
}

/// Right-bent propagation; the left one is its mirror image.
Gadget bent_propagation(int k, int k2) {
  Gadget g;
  Gadget up = build_chain(k + 1, BlockKind::Vertical, Parity::Even, Alternation::FirstArmUp);
  up.translate(P(2, 0));
  Gadget across = build_chain(k2 + 1, BlockKind::Horizontal, Parity::Odd, Alternation::FirstArmDown);
  across.translate(P(3, k + 1));
  append(g, up);
  append(g, across);
  // The corner: V loses its right arm, H its bottom arm.
  erase_segment(g.network, P(3, k), P(4, k));
  erase_segment(g.network, P(4, k + 1), P(4, k));
  const Point end = across.gates[1];
  const Point top(end.x(), k + 4);
  add(g.network, end, top);
  add(g.network, top, P(0, k + 4));
  add(g.network, P(0, k + 4), P(0, 1));
  push_curve(g.curve, top);
  push_curve(g.curve, P(0, k + 4));
  push_curve(g.curve, P(0, 1));
  g.gates[0] = g.curve.points.front();
  g.gates[1] = g.curve.points.back();
  g.reverse_curve();
  g.ports = {{up.ports[0].edge, PortRole::ChainEnd}, {across.ports[1].edge, PortRole::ChainEnd}};
  g.boundary = {P(0, 0), P(4, 0), P(4, k), P(4 + k2, k), P(4 + k2, k + 4), P(0, k + 4)};
  return g;
}

}  // namespace

Gadget build_propagation(int k, BendKind bend, int k2) {
  if (bend == BendKind::None) {
    if (k < 6) throw InputError("straight propagation needs k >= 6");
    Gadget g = build_chain(k, BlockKind::Vertical, Parity::Odd, Alternation::FirstArmUp);
    g.translate(P(2, 0));
    const Point end = g.gates[1];  // left arm of the top block
    add(g.network, end, P(0, end.y()));
    add(g.network, P(0, end.y()), P(0, 1));
    push_curve(g.curve, P(0, end.y()));
    push_curve(g.curve, P(0, 1));
    g.gates[1] = P(0, 1);
    g.reverse_curve();
    g.boundary = box_polygon(0, 0, 4, k);
    return g;
  }
  if (k < 5 || k2 < 5) throw InputError("bent propagation needs k, k' >= 5");
  Gadget g = bent_propagation(k, k2);
  if (bend == BendKind::Left) {
    g.mirror_x(2);
    g.reverse_curve();
  }
  return g;
}

namespace {

/// One tuning fork of the variable's top row with its T tine at x. The base
/// row runs from gl to gr at height 11.
void occurrence_block(Gadget& g, double x, double gl, double gr) {
  auto& n = g.network;
  add(n, P(gl, 11), P(x, 11));
  add(n, P(x, 11), P(x + 1, 11));
  add(n, P(x + 1, 11), P(x + 2, 11));
  add(n, P(x + 2, 11), P(x + 3, 11));
  add(n, P(x + 3, 11), P(gr, 11));
  for (double side : {x, x + 3}) {
    add(n, P(side, 11), P(side, 12));
    add(n, P(side, 12), P(side, 13));
    add(n, P(side, 13), P(side, 16));
  }
  add(n, P(x + 1, 11), P(x + 1, 16));
  add(n, P(x + 2, 11), P(x + 2, 16));
  add(n, P(x, 16), P(x + 1, 16));
  add(n, P(x + 2, 16), P(x + 3, 16));
  for (const Point& p : {P(gl, 11), P(x + 1, 11), P(x + 1, 16), P(x + 1.5, 15.5), P(x + 2, 16), P(x + 2, 11),
                         P(gr, 11)})
    push_curve(g.curve, p);
}

/// Chain joining the F side of the top-right fork (at x = a) to the T side
/// of the bottom-right one, bending around the right end of the gadget.
void corner_chain(Gadget& g, double a) {
  auto& n = g.network;
  for (double lo : {12.0, 3.0}) {
    const double hi = lo + 1;
    add_rect(n, a, lo, a + 1, hi, {P(a + 0.5, lo), P(a + 0.5, hi)});
    add_rect(n, a + 1, lo, a + 3, hi, {P(a + 2, lo == 12 ? hi : lo)});
  }
  erase_segment(n, P(a, 12), P(a + 0.5, 12));
  erase_segment(n, P(a, 4), P(a + 0.5, 4));
  add(n, P(a + 0.5, 11), P(a + 0.5, 12));
  add(n, P(a + 0.5, 13), P(a + 0.5, 14));
  add(n, P(a + 0.5, 14), P(a + 2, 14));
  add(n, P(a + 2, 13), P(a + 2, 14));
  add(n, P(a + 0.5, 4), P(a + 0.5, 5));
  add(n, P(a + 0.5, 3), P(a + 0.5, 2));
  add(n, P(a + 0.5, 2), P(a + 2, 2));
  add(n, P(a + 2, 3), P(a + 2, 2));
  // Vertical part: V, two 2-blocks, V'.
  add_rect(n, a + 3, 10, a + 4, 12, {P(a + 4, 11)});
  add_rect(n, a + 3, 8, a + 4, 10, {P(a + 3, 9), P(a + 4, 9)});
  add_rect(n, a + 3, 6, a + 4, 8, {P(a + 3, 7), P(a + 4, 7)});
  add_rect(n, a + 3, 4, a + 4, 6, {P(a + 4, 5)});
  for (double y : {11.0, 9.0, 7.0, 5.0}) add(n, P(a + 4, y), P(a + 5, y));
  for (double y : {9.0, 7.0}) add(n, P(a + 2, y), P(a + 3, y));
  add(n, P(a + 5, 11), P(a + 5, 9));
  add(n, P(a + 2, 9), P(a + 2, 7));
  add(n, P(a + 5, 7), P(a + 5, 5));
  for (const Point& p : {P(a + 0.5, 11), P(a + 0.5, 14), P(a + 2, 14), P(a + 2, 11), P(a + 5, 11), P(a + 5, 9),
                         P(a + 2, 9), P(a + 2, 7), P(a + 5, 7), P(a + 5, 5), P(a + 2, 5), P(a + 2, 2),
                         P(a + 0.5, 2), P(a + 0.5, 5)})
    push_curve(g.curve, p);
}

Point rotated(const Point& p, const Point& c) { return 2 * c - p; }

}  // namespace

Gadget build_variable(int k_above, int k_below) {
  if (k_above < 0 || k_below < 0) throw InputError("occurrence counts must be non-negative");
  const int k = std::max(k_above, k_below);
  if (k == 0) throw InputError("variable without occurrences");
  const double width = 4 + 11.0 * k;
  const double a = width - 6;

  // Top row and right corner; the rest is the same half turned about the centre.
  Gadget half;
  for (int i = 0; i < k; ++i) {
    const double x = 6 + 11.0 * i;
    occurrence_block(half, x, i == 0 ? x - 0.5 : x - 1, i == k - 1 ? x + 3.5 : x + 4);
    if (i + 1 < k) {
      Gadget link = build_chain(8, BlockKind::Horizontal, Parity::Even, Alternation::FirstArmDown);
      link.translate(P(x + 3, 12));
      // Without these half sides a walk could reach the shared side either
      // through the fork or through the arm; keep only the fork route.
      erase_segment(link.network, P(x + 3, 12), P(x + 4, 12));
      erase_segment(link.network, P(x + 10, 12), P(x + 11, 12));
      append(half, link);
    }
  }
  corner_chain(half, a);

  const Point centre(width / 2, 8);
  Gadget g;
  g.network = half.network;
  for (const auto& s : half.network) add(g.network, rotated(s.a, centre), rotated(s.b, centre));
  // Ring: half, turned half, back to the start at (5.5, 11).
  Polyline ring = half.curve;
  for (std::size_t i = 1; i < half.curve.points.size(); ++i)
    push_curve(ring, rotated(half.curve.points[i], centre));
  ring.points.pop_back();

  // Open the ring at the join (1,9)-(1,11) of the left corner and lead both
  // ends out to the gates.
  erase_segment(g.network, P(1, 9), P(1, 11));
  add(g.network, P(0, 9), P(1, 9));
  add(g.network, P(0, 11), P(1, 11));
  const auto& rp = ring.points;
  std::size_t cut = rp.size();
  for (std::size_t i = 0; i < rp.size(); ++i) {
    if (same(rp[i], P(1, 9)) && same(rp[(i + 1) % rp.size()], P(1, 11))) cut = i;
  }
  if (cut == rp.size()) throw ConstructionError("variable: ring does not pass the gate join");
  // Traverse the ring backwards from (1,9) so that the curve runs from the
  // lower gate to the upper one.
  g.curve.points.clear();
  push_curve(g.curve, P(0, 9));
  for (std::size_t s = 0; s < rp.size(); ++s) push_curve(g.curve, rp[(cut + rp.size() - s) % rp.size()]);
  push_curve(g.curve, P(0, 11));
  g.gates[0] = P(0, 9);
  g.gates[1] = P(0, 11);

  for (int i = 0; i < k; ++i) {
    const double x = 6 + 11.0 * i;
    g.ports.push_back({Segment{P(x, 16), P(x + 1, 16)}, PortRole::TPort});
    g.ports.push_back({Segment{P(x + 2, 16), P(x + 3, 16)}, PortRole::FPort});
    g.ports.push_back({Segment{P(x, 0), P(x + 1, 0)}, PortRole::FPort});
    g.ports.push_back({Segment{P(x + 2, 0), P(x + 3, 0)}, PortRole::TPort});
  }
  g.boundary = box_polygon(0, 0, width, 16);
  return g;
}

Gadget build_clause() {
  Gadget g;
  auto& n = g.network;
  const Point hub(1.5, 7.5);
  add(n, P(1, 8), P(1, 7));
  add(n, P(1, 7), P(1, 1));
  add(n, P(1, 1), P(1, 0));
  add(n, P(1, 0), P(2, 0));
  add(n, P(2, 0), P(2, 1));
  add(n, P(2, 1), P(2, 7));
  add(n, P(2, 7), P(2, 8));
  add(n, P(1, 8), hub);
  add(n, hub, P(2, 8));
  add(n, P(1, 7), hub);
  add(n, hub, P(2, 7));
  // Side routes to the left and right ports, kept half a unit off the box.
  for (int side = 0; side < 2; ++side) {
    const double out = side == 0 ? 0 : 3, mid = side == 0 ? 0.5 : 2.5, in = side == 0 ? 1 : 2;
    const Point route[] = {P(in, 8), P(mid, 7.5), P(mid, 5.5), P(out, 5), P(out, 4), P(mid, 3.5), P(mid, 1), P(in, 1)};
    for (int i = 0; i + 1 < 8; ++i) add(n, route[i], route[i + 1]);
  }
  g.curve.points = {P(1, 8), P(1, 1), P(2, 1), P(2, 8)};
  g.gates[0] = P(1, 8);
  g.gates[1] = P(2, 8);
  g.ports = {{Segment{P(0, 4), P(0, 5)}, PortRole::ClausePort},
             {Segment{P(1, 0), P(2, 0)}, PortRole::ClausePort},
             {Segment{P(3, 4), P(3, 5)}, PortRole::ClausePort}};
  g.boundary = box_polygon(0, 0, 3, 8);
  return g;
}

// ---------------------------------------------------------------------------
// Formulas

namespace {

int var_of(int lit) { return lit < 0 ? -lit : lit; }

struct Span {
  int lo, mid, hi;
};

Span span_of(const ClauseRecord& c) {
  return {var_of(c.literals[0]), var_of(c.literals[1]), var_of(c.literals[2])};
}

/// True when clause j sits inside clause i (same side). Equal spans nest in
/// input order: the earlier clause is the outer one.
bool nested_in(const EmbeddedFormula& f, std::size_t j, std::size_t i) {
  if (i == j || f.clauses[i].side != f.clauses[j].side) return false;
  const Span a = span_of(f.clauses[i]), b = span_of(f.clauses[j]);
  if (a.lo > b.lo || b.hi > a.hi) return false;
  if (a.lo == b.lo && a.hi == b.hi) return i < j;
  // A one-variable clause on an end variable of the outer span sits beside
  // it rather than under it.
  return !(b.lo == a.hi || b.hi == a.lo);
}

/// Inner clause j lies in the left part (between the left and middle legs)
/// of outer clause i.
bool in_left_part(const EmbeddedFormula& f, std::size_t j, std::size_t i) {
  const Span a = span_of(f.clauses[i]), b = span_of(f.clauses[j]);
  return b.hi <= a.mid;
}

}  // namespace

void validate_formula(const EmbeddedFormula& f) {
  if (f.num_vars < 1) throw InputError("formula needs at least one variable");
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    const auto& c = f.clauses[i];
    const std::string where = "clause " + std::to_string(i) + ": ";
    for (int lit : c.literals) {
      if (lit == 0 || var_of(lit) > f.num_vars) throw InputError(where + "literal out of range");
    }
    const Span s = span_of(c);
    if (!(s.lo <= s.mid && s.mid <= s.hi)) throw InputError(where + "literals not in left-middle-right order");
  }
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    for (std::size_t j = 0; j < f.clauses.size(); ++j) {
      if (i == j || f.clauses[i].side != f.clauses[j].side) continue;
      const Span a = span_of(f.clauses[i]), b = span_of(f.clauses[j]);
      const std::string pair = "clauses " + std::to_string(i) + " and " + std::to_string(j) + ": ";
      if (nested_in(f, j, i)) {
        // The inner clause must fit on one side of the outer middle leg.
        if (!(b.hi <= a.mid || b.lo >= a.mid)) throw InputError(pair + "inner clause straddles the middle leg");
        continue;
      }
      if (nested_in(f, i, j)) continue;
      const bool apart = a.hi <= b.lo || b.hi <= a.lo;
      if (!apart) throw InputError(pair + "spans cross");
    }
  }
}

std::vector<int> compute_dominance(const EmbeddedFormula& f) {
  validate_formula(f);
  const std::size_t n = f.clauses.size();
  std::vector<int> dom(n, -1);
  // Inner clauses have strictly smaller spans or come later in input order,
  // so a memoised recursion terminates.
  std::vector<char> busy(n, 0);
  auto rec = [&](auto&& self, std::size_t i) -> int {
    if (dom[i] >= 0) return dom[i];
    if (busy[i]) throw InputError("cyclic clause nesting");
    busy[i] = 1;
    int d = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (nested_in(f, j, i)) d = std::max(d, 1 + self(self, j));
    }
    busy[i] = 0;
    return dom[i] = d;
  };
  for (std::size_t i = 0; i < n; ++i) rec(rec, i);
  return dom;
}

std::vector<std::vector<Occurrence>> assign_slots(const EmbeddedFormula& f) {
  validate_formula(f);
  std::vector<std::vector<Occurrence>> out(f.num_vars + 1);
  for (int v = 1; v <= f.num_vars; ++v) {
    for (Side side : {Side::Above, Side::Below}) {
      std::vector<Occurrence> occ;
      for (std::size_t c = 0; c < f.clauses.size(); ++c) {
        if (f.clauses[c].side != side) continue;
        for (int p = 0; p < 3; ++p) {
          if (var_of(f.clauses[c].literals[p]) == v) occ.push_back({static_cast<int>(c), p, side, -1});
        }
      }
      // Left-to-right order of legs at v.
      auto before = [&](const Occurrence& x, const Occurrence& y) {
        if (x.clause == y.clause) return x.position < y.position;
        const std::size_t a = x.clause, b = y.clause;
        if (nested_in(f, b, a)) {
          if (x.position == 0) return true;
          if (x.position == 2) return false;
          return !in_left_part(f, b, a);
        }
        if (nested_in(f, a, b)) {
          if (y.position == 0) return false;
          if (y.position == 2) return true;
          return in_left_part(f, a, b);
        }
        const Span sa = span_of(f.clauses[a]), sb = span_of(f.clauses[b]);
        if (sa.hi != sb.hi) return sa.hi < sb.hi;
        return sa.lo < sb.lo;
      };
      std::sort(occ.begin(), occ.end(), before);
      for (std::size_t i = 0; i < occ.size(); ++i) {
        for (std::size_t j = i + 1; j < occ.size(); ++j) {
          if (before(occ[j], occ[i]))
            throw InputError("variable " + std::to_string(v) + ": legs cannot be ordered consistently");
        }
        occ[i].slot = static_cast<int>(i);
      }
      out[v].insert(out[v].end(), occ.begin(), occ.end());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reduction

namespace {

constexpr double kRail = 17;  // rail height above the variables

struct Placed {
  std::string id;
  Gadget g;
};

/// Walks the curve from gate to gate, recording the connecting rails.
class Stitcher {
 public:
  explicit Stitcher(const Point& start) : cur_(start) { curve.points.push_back(start); }

  void line_to(const Point& p) {
    if (same(p, cur_)) return;
    rail.push_back({cur_, p});
    push_curve(curve, p);
    cur_ = p;
  }

  void through(const Placed& part) {
    const auto& pts = part.g.curve.points;
    if (same(cur_, pts.front())) {
      for (const auto& p : pts) push_curve(curve, p);
    } else if (same(cur_, pts.back())) {
      for (auto it = pts.rbegin(); it != pts.rend(); ++it) push_curve(curve, *it);
    } else {
      throw ConstructionError(part.id + ": stitching does not reach a gate");
    }
    cur_ = curve.points.back();
  }

  Polyline curve;
  std::vector<Segment> rail;

 private:
  Point cur_;
};

bool same_edge(const Segment& a, const Segment& b) {
  return (same(a.a, b.a) && same(a.b, b.b)) || (same(a.a, b.b) && same(a.b, b.a));
}

void require_port(const Gadget& g, const Segment& e, const std::string& id) {
  for (const auto& port : g.ports) {
    if (same_edge(port.edge, e)) return;
  }
  throw ConstructionError(id + ": port misalignment");
}

struct Layout {
  std::vector<double> x;  // left side of each variable box, 1-based
  std::vector<int> k;
  double xs = 0, xt = 0;
};

/// Left end of the unit port edge an occurrence attaches to, in the frame
/// where the side being built faces up.
double port_x(const Layout& lay, int lit, Side side, int slot) {
  const double base = lay.x[var_of(lit)] + 11.0 * slot;
  const bool positive = lit > 0;  // positive literals hang off F-ports
  if (side == Side::Above) return base + (positive ? 8 : 6);
  return base + (positive ? 6 : 8);
}

/// Builds the clauses and propagation gadgets of one side and the rail
/// through them, all in the frame where that side faces up.
Stitcher build_side(const EmbeddedFormula& f, const Layout& lay, const std::vector<int>& dom,
                    const std::vector<std::vector<Occurrence>>& slots, Side side,
                    const std::vector<Placed>& variables, std::vector<Placed>& out) {
  struct Event {
    double x;
    int kind;  // 0 variable, 1 clause approach, 2 propagation
    std::size_t index;
  };
  std::vector<Event> events;
  std::vector<Placed> mine;
  std::vector<std::size_t> clause_ids;
  struct Approach {
    std::size_t clause;
    double x0;  // left gate of the clause's left propagation gadget
  };
  std::vector<Approach> approaches;

  auto slot_of = [&](std::size_t c, int pos) {
    const int v = var_of(f.clauses[c].literals[pos]);
    for (const auto& o : slots[v]) {
      if (o.clause == static_cast<int>(c) && o.position == pos) return o.slot;
    }
    throw ConstructionError("clause" + std::to_string(c) + ": occurrence without slot");
  };

  for (std::size_t c = 0; c < f.clauses.size(); ++c) {
    const auto& cl = f.clauses[c];
    if (cl.side != side) continue;
    const std::string id = "clause" + std::to_string(c);
    double px[3];
    for (int p = 0; p < 3; ++p) px[p] = port_x(lay, cl.literals[p], side, slot_of(c, p));
    const int d = dom[c];
    const double cy = 22 + 12.0 * d, cx = px[1] - 1;
    Placed clause{id, build_clause()};
    clause.g.translate(P(cx, cy));

    const int km = 6 + 12 * d;
    Placed mid{"prop" + std::to_string(c) + ".m", build_propagation(km)};
    mid.g.translate(P(px[1] - 2, 16));

    const int kb = 9 + 12 * d;
    const double x0l = px[0] - 2, x0r = px[2] - 1;
    const int kl = static_cast<int>(std::lround(cx - x0l - 4));
    const int kr = static_cast<int>(std::lround(x0r - cx - 3));
    if (kl < 5 || kr < 5) throw ConstructionError(id + ": bend length below 5");
    Placed left{"prop" + std::to_string(c) + ".l", build_propagation(kb, BendKind::Right, kl)};
    left.g.translate(P(x0l, 16));
    Placed right{"prop" + std::to_string(c) + ".r", build_propagation(kb, BendKind::Left, kr)};
    right.g.translate(P(x0r, 16));

    require_port(clause.g, left.g.ports[1].edge, left.id);
    require_port(clause.g, mid.g.ports[1].edge, mid.id);
    require_port(clause.g, right.g.ports[1].edge, right.id);
    for (int p = 0; p < 3; ++p) {
      const Placed& leg = p == 0 ? left : p == 1 ? mid : right;
      // Variables are built facing up; the lower side sees their bottom
      // ports mirrored onto the top.
      Segment e = leg.g.ports[0].edge;
      if (side == Side::Below) e = Segment{P(e.a.x(), 16 - e.a.y()), P(e.b.x(), 16 - e.b.y())};
      require_port(variables[var_of(cl.literals[p]) - 1].g, e, leg.id);
    }

    approaches.push_back({mine.size(), x0l});
    mine.push_back(std::move(clause));
    for (Placed* leg : {&left, &mid, &right}) {
      events.push_back({leg->g.gates[0].x(), 2, mine.size()});
      mine.push_back(std::move(*leg));
    }
  }
  for (std::size_t a = 0; a < approaches.size(); ++a) events.push_back({approaches[a].x0 - 2, 1, a});
  if (side == Side::Above) {
    for (std::size_t v = 0; v < variables.size(); ++v) events.push_back({lay.x[v + 1] - 2, 0, v});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.x < b.x; });

  Stitcher st(P(lay.xs, kRail));
  for (const Event& ev : events) {
    if (ev.kind == 0) {
      const Placed& var = variables[ev.index];
      const double x = var.g.gates[0].x();
      st.line_to(P(x - 2, kRail));
      st.line_to(P(x - 2, var.g.gates[0].y()));
      st.line_to(var.g.gates[0]);
      st.through(var);
      st.line_to(P(x - 1, var.g.gates[1].y()));
      st.line_to(P(x - 1, kRail));
    } else if (ev.kind == 1) {
      const Approach& ap = approaches[ev.index];
      const Placed& clause = mine[ap.clause];
      const Point g1 = clause.g.gates[0], g2 = clause.g.gates[1];
      const double top = g1.y();
      st.line_to(P(ap.x0 - 2, kRail));
      st.line_to(P(ap.x0 - 2, top + 2));
      st.line_to(P(g2.x(), top + 2));
      st.line_to(g2);
      st.through(clause);
      st.line_to(P(g1.x(), top + 1));
      st.line_to(P(ap.x0 - 1, top + 1));
      st.line_to(P(ap.x0 - 1, kRail));
    } else {
      const Placed& prop = mine[ev.index];
      st.line_to(prop.g.gates[0]);
      st.through(prop);
    }
  }
  st.line_to(P(lay.xt, kRail));
  for (auto& m : mine) out.push_back(std::move(m));
  return st;
}

void mirror_stitch(Stitcher& st) {
  for (auto& p : st.curve.points) p.y() = 16 - p.y();
  for (auto& s : st.rail) s = Segment{P(s.a.x(), 16 - s.a.y()), P(s.b.x(), 16 - s.b.y())};
}

}  // namespace

const GadgetRecord* Instance::find(const std::string& id) const {
  for (const auto& r : provenance) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

Instance reduce(const EmbeddedFormula& f, Variant variant) {
  validate_formula(f);
  const std::vector<int> dom = compute_dominance(f);
  const auto slots = assign_slots(f);

  Layout lay;
  lay.x.assign(f.num_vars + 1, 0);
  lay.k.assign(f.num_vars + 1, 0);
  double x = 4;
  std::vector<Placed> variables;
  for (int v = 1; v <= f.num_vars; ++v) {
    int above = 0, below = 0;
    for (const auto& o : slots[v]) (o.side == Side::Above ? above : below)++;
    lay.k[v] = std::max({1, above, below});
    lay.x[v] = x;
    Placed var{"var" + std::to_string(v), build_variable(std::max(1, above), below)};
    var.g.translate(P(x, 0));
    variables.push_back(std::move(var));
    x += 4 + 11.0 * lay.k[v] + 3;
  }
  lay.xs = 0;
  lay.xt = x - 3 + 2;

  std::vector<Placed> upper, lower;
  Stitcher top = build_side(f, lay, dom, slots, Side::Above, variables, upper);
  Stitcher bottom = build_side(f, lay, dom, slots, Side::Below, variables, lower);
  mirror_stitch(bottom);
  for (auto& p : lower) p.g.mirror_y(8);

  Instance inst;
  NetworkBuilder b;
  auto record = [&](const std::string& id, const std::vector<Segment>& segs, const Eigen::AlignedBox2d& box,
                    const std::vector<Point>& boundary) {
    GadgetRecord r;
    r.id = id;
    r.box = box;
    r.boundary = boundary;
    for (const auto& s : segs) {
      r.edges.push_back(b.add_segment(s.a, s.b));
      r.vertices.push_back(b.find_vertex(s.a));
      r.vertices.push_back(b.find_vertex(s.b));
    }
    std::sort(r.vertices.begin(), r.vertices.end());
    r.vertices.erase(std::unique(r.vertices.begin(), r.vertices.end()), r.vertices.end());
    std::sort(r.edges.begin(), r.edges.end());
    r.edges.erase(std::unique(r.edges.begin(), r.edges.end()), r.edges.end());
    inst.provenance.push_back(std::move(r));
  };
  for (const auto* group : {&variables, &upper, &lower}) {
    for (const auto& p : *group) record(p.id, p.g.network, p.g.bounds(), p.g.boundary);
  }
  std::vector<Segment> rails = top.rail;
  rails.insert(rails.end(), bottom.rail.begin(), bottom.rail.end());
  const Point s(lay.xs, kRail), t(lay.xt, kRail), s2(lay.xs, 16 - kRail), t2(lay.xt, 16 - kRail);
  rails.push_back({t, t2});
  if (variant == Variant::Closed) rails.push_back({s2, s});
  Eigen::AlignedBox2d rail_box;
  for (const auto& r : rails) {
    rail_box.extend(r.a);
    rail_box.extend(r.b);
  }
  record("rail", rails, rail_box, {});

  Polyline curve = top.curve;
  push_curve(curve, t2);
  const auto& low = bottom.curve.points;
  for (auto it = low.rbegin(); it != low.rend(); ++it) push_curve(curve, *it);
  curve.closed = variant == Variant::Closed;
  inst.curve = std::move(curve);
  inst.network = b.build();

  for (int v = 1; v <= f.num_vars; ++v) {
    const double tx = lay.x[v] + 6;
    inst.t_marker.push_back(inst.network.edge_between(b.find_vertex(P(tx, 13)), b.find_vertex(P(tx, 16))));
    inst.f_marker.push_back(
        inst.network.edge_between(b.find_vertex(P(tx + 3, 13)), b.find_vertex(P(tx + 3, 16))));
  }
  return inst;
}

std::vector<bool> decode_assignment(const Instance& inst, const Walk& w) {
  std::vector<char> used(inst.network.edge_count(), 0);
  const std::size_t n = w.vertex_ids.size();
  const std::size_t m = w.shape == WalkShape::Cycle ? n : n - 1;
  for (std::size_t i = 0; i < m; ++i) {
    const int e = inst.network.edge_between(w.vertex_ids[i], w.vertex_ids[(i + 1) % n]);
    if (e >= 0) used[e] = 1;
  }
  std::vector<bool> out;
  for (int e : inst.t_marker) out.push_back(e >= 0 && used[e]);
  return out;
}

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;
  const Network& net = inst.network;
  if (inst.curve.points.size() < 2) {
    out.push_back("curve has fewer than two points");
    return out;
  }
  if (!is_simple(inst.curve)) out.push_back("curve is not simple");
  for (const auto& v : validate(net)) out.push_back("network: " + v.message);

  // Every point of the curve must lie within unit distance of the network,
  // otherwise no walk can match it at eps = 1.
  for (std::size_t i = 0; i < inst.curve.segment_count(); ++i) {
    const Segment s = inst.curve.segment(i);
    std::vector<std::pair<double, double>> cover;
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
      const Segment f = net.segment(e);
      if (dist_segment_segment(s, f) > 1 + kTol) continue;
      // Distance to f is convex along s, so its sublevel set is an interval.
      auto d = [&](double t) { return dist_point_segment(s.at(t), f); };
      double lo = 0, hi = 1;
      for (int k = 0; k < 80; ++k) {
        const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (d(m1) < d(m2)) hi = m2;
        else lo = m1;
      }
      const double tm = 0.5 * (lo + hi);
      if (d(tm) > 1 + kTol) continue;
      auto edge_of = [&](double in, double out) {
        if (d(out) <= 1 + kTol) return out;
        for (int k = 0; k < 60; ++k) {
          const double mid = 0.5 * (in + out);
          (d(mid) <= 1 + kTol ? in : out) = mid;
        }
        return in;
      };
      cover.emplace_back(edge_of(tm, 0.0), edge_of(tm, 1.0));
    }
    std::sort(cover.begin(), cover.end());
    double reach = 0;
    for (const auto& [a, b] : cover) {
      if (a > reach + 1e-7) break;
      reach = std::max(reach, b);
    }
    if (reach < 1 - 1e-7) out.push_back("curve segment " + std::to_string(i) + " leaves the unit neighbourhood of the network");
  }

  // Gadgets may share boundary points only.
  auto strictly_inside = [](const std::vector<Point>& poly, const Point& p) {
    return inside_or_on(poly, p) && !on_boundary(poly, p);
  };
  for (const auto& a : inst.provenance) {
    for (const auto& b : inst.provenance) {
      if (&a == &b || b.boundary.empty()) continue;
      bool bad = false;
      for (int v : a.vertices) bad = bad || strictly_inside(b.boundary, net.vertex(v));
      for (const auto& p : a.boundary) bad = bad || strictly_inside(b.boundary, p);
      for (int e : a.edges) bad = bad || strictly_inside(b.boundary, net.segment(e).at(0.5));
      if (bad) out.push_back(a.id + " intrudes into " + b.id);
    }
  }
  return out;
}

}  // namespace matchkit
