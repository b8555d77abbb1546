#include "matchkit/frechet.hpp"

#include "matchkit/detail/free_space.hpp"
#include "matchkit/detail/union_find.hpp"

#include <algorithm>

namespace matchkit {

void check_polyline(const Polyline& c) {
  if (c.points.size() < 2) throw InputError("polyline needs at least two points");
  for (const auto& p : c.points) {
    if (!p.allFinite()) throw InputError("polyline has a non-finite coordinate");
  }
  for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
    if (c.points[i] == c.points[i + 1]) {
      throw InputError("polyline repeats point " + std::to_string(i));
    }
  }
  if (c.closed && c.points.front() == c.points.back()) {
    throw InputError("closed polyline stores its first point twice");
  }
}

bool is_simple(const Polyline& c) {
  const std::size_t m = c.segment_count();
  if (m == 0) return false;
  if (c.closed && c.size() < 3) return false;
  std::vector<Eigen::AlignedBox2d> boxes(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Segment s = c.segment(i);
    boxes[i].extend(s.a);
    boxes[i].extend(s.b);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const bool adjacent = (j == i + 1) || (c.closed && i == 0 && j == m - 1);
      Eigen::AlignedBox2d bi = boxes[i];
      if (!adjacent) {
        bi.min().array() -= kTolerance;
        bi.max().array() += kTolerance;
        if (!bi.intersects(boxes[j])) continue;
      }
      const Intersection hit = classify_intersection(c.segment(i), c.segment(j));
      if (hit.kind == IntersectionKind::Disjoint) continue;
      if (!adjacent) return false;
      if (hit.kind == IntersectionKind::Overlap || !hit.at_endpoints_only) return false;
      const Point shared = (j == i + 1) ? c.vertex(j) : c.vertex(0);
      if ((hit.where - shared).norm() > kTolerance) return false;
    }
  }
  return true;
}

namespace {

using detail::FreeSpaceGrid;

bool strong_open(const Polyline& a, const Polyline& b, double eps) {
  if ((a.points.front() - b.points.front()).norm() > eps + kTolerance) return false;
  if ((a.points.back() - b.points.back()).norm() > eps + kTolerance) return false;
  const FreeSpaceGrid grid(a, b, eps, /*columns=*/b.segment_count());
  return grid.reaches(0, 0.0, b.segment_count() - 1, 1.0);
}

bool strong_closed(const Polyline& a, const Polyline& b, double eps) {
  const std::size_t p = a.segment_count();
  const std::size_t q = b.segment_count();
  const FreeSpaceGrid grid(a, b, eps, 2 * q + 1);
  for (std::size_t j0 = 0; j0 < q; ++j0) {
    const UnitInterval start = grid.bottom(0, j0);
    if (start.empty()) continue;
    // The earliest-reachable end point is a step function of the start
    // parameter whose steps sit at interval ends of the start column, so
    // only those starts need testing.
    std::vector<double> candidates{start.hi};
    for (std::size_t i = 1; i <= p; ++i) {
      const UnitInterval iv = grid.bottom(i, j0);
      if (!iv.empty() && iv.hi >= start.lo && iv.hi <= start.hi) candidates.push_back(iv.hi);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (double s : candidates) {
      if (grid.reaches(j0, s, j0 + q, s)) return true;
    }
  }
  return false;
}

bool weak_open(const Polyline& a, const Polyline& b, double eps) {
  if ((a.points.front() - b.points.front()).norm() > eps + kTolerance) return false;
  if ((a.points.back() - b.points.back()).norm() > eps + kTolerance) return false;
  const std::size_t p = a.segment_count();
  const std::size_t q = b.segment_count();
  const FreeSpaceGrid grid(a, b, eps, q);
  detail::UnionFind uf(p * q);
  auto id = [q](std::size_t i, std::size_t j) { return static_cast<int>(i * q + j); };
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      if (j + 1 < q && !grid.left(i, j + 1).empty()) uf.unite(id(i, j), id(i, j + 1));
      if (i + 1 < p && !grid.bottom(i + 1, j).empty()) uf.unite(id(i, j), id(i + 1, j));
    }
  }
  return uf.find(id(0, 0)) == uf.find(id(p - 1, q - 1));
}

bool weak_closed(const Polyline& a, const Polyline& b, double eps) {
  const std::size_t p = a.segment_count();
  const std::size_t q = b.segment_count();
  const FreeSpaceGrid grid(a, b, eps, q);
  detail::PeriodicUnionFind uf(p * q);
  auto id = [q](std::size_t i, std::size_t j) { return static_cast<int>(i * q + j); };
  std::vector<char> free_cell(p * q, 0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      // The right boundary of column q-1 is the left boundary of column 0.
      const std::size_t jn = (j + 1) % q;
      const std::size_t in = (i + 1) % p;
      const UnitInterval right = grid.left(i, jn);
      const UnitInterval top = grid.bottom(i + 1, j);
      if (!right.empty()) {
        uf.unite(id(i, j), id(i, jn), detail::Offset(0, j + 1 == q ? 1 : 0));
        free_cell[id(i, j)] = 1;
      }
      if (!top.empty()) {
        uf.unite(id(i, j), id(in, j), detail::Offset(i + 1 == p ? 1 : 0, 0));
        free_cell[id(i, j)] = 1;
      }
    }
  }
  for (std::size_t c = 0; c < p * q; ++c) {
    if (free_cell[c] && uf.lattice(static_cast<int>(c)).contains(detail::Offset(1, 1))) return true;
  }
  return false;
}

}  // namespace

bool decide_frechet(const Polyline& a, const Polyline& b, double eps, FrechetVariant v) {
  check_polyline(a);
  check_polyline(b);
  const bool want_closed = v.topology == Topology::Closed;
  if (a.closed != want_closed || b.closed != want_closed) {
    throw InputError("curve topology does not match the requested variant");
  }
  if (eps < 0) throw InputError("eps must be non-negative");
  if (v.monotonicity == Monotonicity::Strong) {
    return want_closed ? strong_closed(a, b, eps) : strong_open(a, b, eps);
  }
  return want_closed ? weak_closed(a, b, eps) : weak_open(a, b, eps);
}

double compute_frechet(const Polyline& a, const Polyline& b, FrechetVariant v, double tol) {
  if (!(tol > 0)) throw InputError("tolerance must be positive");
  double hi = 0;
  for (const auto& p : a.points) {
    for (const auto& r : b.points) hi = std::max(hi, (p - r).norm());
  }
  double lo = 0;
  if (decide_frechet(a, b, 0.0, v)) return 0.0;
  hi += tol;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (decide_frechet(a, b, mid, v)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace matchkit
