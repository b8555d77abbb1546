#ifndef MATCHKIT_GEOM_HPP
#define MATCHKIT_GEOM_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>

namespace matchkit {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;
using Point = Point2<double>;

/// Symmetric tolerance band applied to every distance comparison.
inline constexpr double kTolerance = 1e-9;

template <typename Scalar>
struct Segment2 {
  Point2<Scalar> a;
  Point2<Scalar> b;

  Point2<Scalar> at(Scalar t) const { return a + t * (b - a); }
  Scalar length() const { return (b - a).norm(); }
  bool degenerate() const { return a == b; }
};
using Segment = Segment2<double>;

/// Closed subinterval [lo, hi] of a parameter range. Empty when lo > hi.
struct UnitInterval {
  double lo = 1.0;
  double hi = 0.0;

  static constexpr UnitInterval empty_interval() { return {1.0, 0.0}; }
  bool empty() const { return lo > hi; }
  bool contains(double t) const { return !empty() && lo <= t && t <= hi; }
  bool operator==(const UnitInterval& o) const {
    return (empty() && o.empty()) || (lo == o.lo && hi == o.hi);
  }
};

inline UnitInterval intersect(UnitInterval x, UnitInterval y) {
  if (x.empty() || y.empty()) return UnitInterval::empty_interval();
  UnitInterval r{std::max(x.lo, y.lo), std::min(x.hi, y.hi)};
  return r.empty() ? UnitInterval::empty_interval() : r;
}

template <typename Scalar>
Scalar closest_parameter(const Point2<Scalar>& p, const Segment2<Scalar>& s) {
  const Point2<Scalar> d = s.b - s.a;
  const Scalar len2 = d.squaredNorm();
  if (len2 == Scalar(0)) return Scalar(0);
  return std::clamp((p - s.a).dot(d) / len2, Scalar(0), Scalar(1));
}

template <typename Scalar>
Scalar dist_point_segment(const Point2<Scalar>& p, const Segment2<Scalar>& s) {
  return (p - s.at(closest_parameter(p, s))).norm();
}

template <typename Scalar>
Scalar cross(const Point2<Scalar>& u, const Point2<Scalar>& v) {
  return u.x() * v.y() - u.y() * v.x();
}

/// Sign of the turn a -> b -> c with the tolerance band applied.
template <typename Scalar>
int orientation(const Point2<Scalar>& a, const Point2<Scalar>& b, const Point2<Scalar>& c) {
  const Scalar v = cross<Scalar>(b - a, c - a);
  const Scalar scale = std::max<Scalar>({Scalar(1), (b - a).norm() * (c - a).norm()});
  if (std::abs(v) <= kTolerance * scale) return 0;
  return v > 0 ? 1 : -1;
}

enum class IntersectionKind { Disjoint, Point, Overlap };

struct Intersection {
  IntersectionKind kind = IntersectionKind::Disjoint;
  Point where = Point::Zero();    // valid for Point
  bool at_endpoints_only = false; // the point is an endpoint of both segments
};

namespace detail {

template <typename Scalar>
bool near(const Point2<Scalar>& p, const Point2<Scalar>& q) {
  return (p - q).norm() <= kTolerance;
}

template <typename Scalar>
bool is_endpoint(const Point2<Scalar>& p, const Segment2<Scalar>& s) {
  return near(p, s.a) || near(p, s.b);
}

template <typename Scalar>
bool on_segment(const Point2<Scalar>& p, const Segment2<Scalar>& s) {
  return dist_point_segment(p, s) <= kTolerance;
}

}  // namespace detail

/// Exhaustive classification of how two closed segments meet.
template <typename Scalar>
Intersection classify_intersection(const Segment2<Scalar>& s1, const Segment2<Scalar>& s2) {
  using detail::is_endpoint;
  using detail::on_segment;
  Intersection out;
  auto point_result = [&](const Point2<Scalar>& p) {
    out.kind = IntersectionKind::Point;
    out.where = p.template cast<double>();
    out.at_endpoints_only = is_endpoint(p, s1) && is_endpoint(p, s2);
    return out;
  };

  if (s1.degenerate() || s2.degenerate()) {
    const auto& pt = s1.degenerate() ? s1.a : s2.a;
    const auto& other = s1.degenerate() ? s2 : s1;
    if (on_segment(pt, other)) return point_result(pt);
    return out;
  }

  const int o1 = orientation(s1.a, s1.b, s2.a);
  const int o2 = orientation(s1.a, s1.b, s2.b);
  const int o3 = orientation(s2.a, s2.b, s1.a);
  const int o4 = orientation(s2.a, s2.b, s1.b);

  if (o1 == 0 && o2 == 0) {
    // Collinear: project onto the direction of s1.
    const Point2<Scalar> d = s1.b - s1.a;
    const Scalar len2 = d.squaredNorm();
    Scalar t0 = (s2.a - s1.a).dot(d) / len2;
    Scalar t1 = (s2.b - s1.a).dot(d) / len2;
    if (t0 > t1) std::swap(t0, t1);
    const Scalar lo = std::max(Scalar(0), t0);
    const Scalar hi = std::min(Scalar(1), t1);
    const Scalar tol = kTolerance / std::sqrt(len2);
    if (lo > hi + tol) return out;
    if (hi - lo <= tol) return point_result(s1.at(lo));
    out.kind = IntersectionKind::Overlap;
    return out;
  }

  if (o1 * o2 <= 0 && o3 * o4 <= 0) {
    if (o1 == 0) return point_result(s2.a);
    if (o2 == 0) return point_result(s2.b);
    if (o3 == 0) return point_result(s1.a);
    if (o4 == 0) return point_result(s1.b);
    const Point2<Scalar> d1 = s1.b - s1.a;
    const Point2<Scalar> d2 = s2.b - s2.a;
    const Scalar t = cross<Scalar>(s2.a - s1.a, d2) / cross<Scalar>(d1, d2);
    return point_result(s1.at(t));
  }
  return out;
}

/// Closed set {t in [0,1] : |p - s(t)| <= eps}, with the tolerance band.
template <typename Scalar>
UnitInterval free_interval(const Segment2<Scalar>& s, const Point2<Scalar>& p, Scalar eps) {
  const Scalar r = eps + Scalar(kTolerance);
  const Point2<Scalar> d = s.b - s.a;
  const Point2<Scalar> w = s.a - p;
  const Scalar a = d.squaredNorm();
  if (a == Scalar(0)) {
    return w.norm() <= r ? UnitInterval{0.0, 1.0} : UnitInterval::empty_interval();
  }
  // |w + t d|^2 <= r^2
  const Scalar b = w.dot(d);
  const Scalar c = w.squaredNorm() - r * r;
  const Scalar disc = b * b - a * c;
  if (disc < Scalar(0)) return UnitInterval::empty_interval();
  const Scalar root = std::sqrt(disc);
  const Scalar lo = (-b - root) / a;
  const Scalar hi = (-b + root) / a;
  UnitInterval iv{static_cast<double>(std::max(Scalar(0), lo)),
                  static_cast<double>(std::min(Scalar(1), hi))};
  return iv.empty() ? UnitInterval::empty_interval() : iv;
}

/// Minimum distance between two closed segments.
template <typename Scalar>
Scalar dist_segment_segment(const Segment2<Scalar>& s1, const Segment2<Scalar>& s2) {
  if (classify_intersection(s1, s2).kind != IntersectionKind::Disjoint) return Scalar(0);
  return std::min({dist_point_segment(s1.a, s2), dist_point_segment(s1.b, s2),
                   dist_point_segment(s2.a, s1), dist_point_segment(s2.b, s1)});
}

}  // namespace matchkit

#endif  // MATCHKIT_GEOM_HPP
