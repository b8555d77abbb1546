// Slow reference implementations used to cross-check the library.
#ifndef MATCHKIT_TESTS_ORACLES_HPP
#define MATCHKIT_TESTS_ORACLES_HPP

#include "matchkit/frechet.hpp"
#include "matchkit/network.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using matchkit::Point;
using matchkit::Polyline;

/// Points along c with spacing at most h, including every vertex.
inline std::vector<Point> sample(const Polyline& c, double h) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < c.segment_count(); ++i) {
    const auto s = c.segment(i);
    const int k = std::max(1, static_cast<int>(std::ceil(s.length() / h)));
    for (int t = 0; t < k; ++t) out.push_back(s.at(static_cast<double>(t) / k));
  }
  if (!c.closed) out.push_back(c.points.back());
  return out;
}

/// Eiter-Mannila discrete Fréchet distance.
inline double discrete_frechet(const std::vector<Point>& a, const std::vector<Point>& b) {
  const std::size_t p = a.size(), q = b.size();
  std::vector<double> row(q), prev(q);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      const double d = (a[i] - b[j]).norm();
      double best;
      if (i == 0 && j == 0) best = d;
      else if (i == 0) best = std::max(row[j - 1], d);
      else if (j == 0) best = std::max(prev[j], d);
      else best = std::max(std::min({prev[j], prev[j - 1], row[j - 1]}), d);
      row[j] = best;
    }
    std::swap(row, prev);
  }
  return prev[q - 1];
}

/// Closed discrete distance: best cyclic shift of b against a, both closed
/// by repeating the start sample.
inline double discrete_frechet_closed(std::vector<Point> a, const std::vector<Point>& b) {
  a.push_back(a.front());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < b.size(); ++s) {
    std::vector<Point> r;
    for (std::size_t k = 0; k <= b.size(); ++k) r.push_back(b[(s + k) % b.size()]);
    best = std::min(best, discrete_frechet(a, r));
  }
  return best;
}

inline Polyline random_polyline(std::mt19937& rng, int min_pts, int max_pts, bool closed, double scale = 4.0) {
  std::uniform_int_distribution<int> count(min_pts, max_pts);
  std::uniform_real_distribution<double> coord(0.0, scale);
  Polyline c;
  c.closed = closed;
  const int n = count(rng);
  while (static_cast<int>(c.points.size()) < n) {
    Point p(coord(rng), coord(rng));
    if (!c.points.empty() && (p - c.points.back()).norm() < 1e-3) continue;
    c.points.push_back(p);
  }
  return c;
}

/// Every simple walk of the given shape, by plain backtracking with no
/// geometric pruning. Cycles are listed once per start rotation class with
/// the smallest vertex first, in both orientations.
inline std::vector<matchkit::Walk> all_simple_walks(const matchkit::Network& net, matchkit::WalkShape shape,
                                                    matchkit::Simplicity mode) {
  using namespace matchkit;
  std::vector<Walk> out;
  const int n = static_cast<int>(net.vertex_count());
  std::vector<int> path;
  std::vector<char> used_e(net.edge_count(), 0);
  std::vector<int> used_v(n, 0);
  std::function<void(int)> go = [&](int v) {
    for (const auto& nb : net.neighbors(v)) {
      if (used_e[nb.edge]) continue;
      const int w = nb.vertex;
      if (shape == WalkShape::Cycle && w == path.front()) {
        const std::size_t need = mode == Simplicity::Vertex ? 3 : 2;
        if (path.size() >= need) out.push_back({path, WalkShape::Cycle});
        if (mode == Simplicity::Vertex) continue;
      }
      if (shape == WalkShape::Cycle && w < path.front()) continue;
      if (mode == Simplicity::Vertex && used_v[w]) continue;
      used_e[nb.edge] = 1;
      ++used_v[w];
      path.push_back(w);
      if (shape == WalkShape::Path) out.push_back({path, WalkShape::Path});
      go(w);
      path.pop_back();
      --used_v[w];
      used_e[nb.edge] = 0;
    }
  };
  for (int v = 0; v < n; ++v) {
    path.assign(1, v);
    used_v[v] = 1;
    go(v);
    used_v[v] = 0;
  }
  if (shape == WalkShape::Cycle && mode == Simplicity::Edge) {
    // Closed trails passing the start vertex more than once show up under
    // several rotations; keep the lexicographically smallest.
    std::vector<std::vector<int>> keys;
    std::vector<Walk> unique;
    for (auto& w : out) {
      std::vector<int> best = w.vertex_ids;
      for (std::size_t r = 1; r < w.vertex_ids.size(); ++r) {
        if (w.vertex_ids[r] != w.vertex_ids[0]) continue;
        std::vector<int> rot;
        for (std::size_t i = 0; i < w.vertex_ids.size(); ++i)
          rot.push_back(w.vertex_ids[(r + i) % w.vertex_ids.size()]);
        best = std::min(best, rot);
      }
      if (std::find(keys.begin(), keys.end(), best) == keys.end()) {
        keys.push_back(best);
        unique.push_back(w);
      }
    }
    out = std::move(unique);
  }
  return out;
}


/// Jittered grid with a random subset of edges and one random diagonal
/// per cell; planar by construction.
inline matchkit::Network random_grid_network(std::mt19937& rng, int rows, int cols, double keep = 0.7) {
  using namespace matchkit;
  std::uniform_real_distribution<double> jitter(-0.2, 0.2), coin(0.0, 1.0);
  std::vector<Point> pts;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) pts.emplace_back(c + jitter(rng), r + jitter(rng));
  std::vector<Edge> edges;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols && coin(rng) < keep) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows && coin(rng) < keep) edges.emplace_back(id(r, c), id(r + 1, c));
      if (r + 1 < rows && c + 1 < cols && coin(rng) < keep * 0.5) {
        if (coin(rng) < 0.5) edges.emplace_back(id(r, c), id(r + 1, c + 1));
        else edges.emplace_back(id(r, c + 1), id(r + 1, c));
      }
    }
  }
  return Network(pts, edges);
}

/// Polyline near a random simple walk of net (or a random curve when the
/// network offers no walk), with vertices displaced by up to `noise`.
inline Polyline curve_near_network(std::mt19937& rng, const matchkit::Network& net, bool closed, double noise) {
  using namespace matchkit;
  std::uniform_real_distribution<double> d(-noise, noise);
  auto walks = all_simple_walks(net, closed ? WalkShape::Cycle : WalkShape::Path, Simplicity::Vertex);
  if (walks.empty()) return random_polyline(rng, 3, 5, closed, 3.0);
  std::uniform_int_distribution<std::size_t> pick(0, walks.size() - 1);
  const Walk& w = walks[pick(rng)];
  Polyline c;
  c.closed = closed;
  for (int v : w.vertex_ids) c.points.push_back(net.vertex(v) + Point(d(rng), d(rng)));
  return c;
}

}  // namespace oracle

#endif  // MATCHKIT_TESTS_ORACLES_HPP
