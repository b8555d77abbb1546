#include "matchkit/geom.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace matchkit;

namespace {

Segment seg(double ax, double ay, double bx, double by) { return {Point(ax, ay), Point(bx, by)}; }

}  // namespace

TEST(Geom, ClassifyProperCrossing) {
  const auto r = classify_intersection(seg(0, 0, 2, 2), seg(0, 2, 2, 0));
  EXPECT_EQ(r.kind, IntersectionKind::Point);
  EXPECT_FALSE(r.at_endpoints_only);
  EXPECT_NEAR(r.where.x(), 1.0, 1e-12);
}

TEST(Geom, ClassifySharedEndpoint) {
  const auto r = classify_intersection(seg(0, 0, 1, 0), seg(1, 0, 1, 1));
  EXPECT_EQ(r.kind, IntersectionKind::Point);
  EXPECT_TRUE(r.at_endpoints_only);
}

TEST(Geom, ClassifyTJunctionIsNotEndpointOnly) {
  const auto r = classify_intersection(seg(0, 0, 2, 0), seg(1, 0, 1, 1));
  EXPECT_EQ(r.kind, IntersectionKind::Point);
  EXPECT_FALSE(r.at_endpoints_only);
}

TEST(Geom, ClassifyCollinearOverlapAndTouch) {
  EXPECT_EQ(classify_intersection(seg(0, 0, 2, 0), seg(1, 0, 3, 0)).kind, IntersectionKind::Overlap);
  const auto touch = classify_intersection(seg(0, 0, 1, 0), seg(1, 0, 3, 0));
  EXPECT_EQ(touch.kind, IntersectionKind::Point);
  EXPECT_TRUE(touch.at_endpoints_only);
  EXPECT_EQ(classify_intersection(seg(0, 0, 1, 0), seg(2, 0, 3, 0)).kind, IntersectionKind::Disjoint);
}

TEST(Geom, ClassifyParallelDisjoint) {
  EXPECT_EQ(classify_intersection(seg(0, 0, 1, 0), seg(0, 1, 1, 1)).kind, IntersectionKind::Disjoint);
}

TEST(Geom, FreeIntervalTangentIsClosed) {
  // Circle of radius 1 around (0.5, 1) touches the x-axis at t = 0.5.
  const auto iv = free_interval(seg(0, 0, 1, 0), Point(0.5, 1.0), 1.0);
  ASSERT_FALSE(iv.empty());
  EXPECT_NEAR(iv.lo, 0.5, 1e-4);
  EXPECT_NEAR(iv.hi, 0.5, 1e-4);
  EXPECT_TRUE(free_interval(seg(0, 0, 1, 0), Point(0.5, 1.0), 0.99).empty());
}

TEST(Geom, FreeIntervalMatchesSampling) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int it = 0; it < 500; ++it) {
    const Segment s = seg(u(rng), u(rng), u(rng), u(rng));
    const Point p(u(rng), u(rng));
    const double eps = std::abs(u(rng));
    const auto iv = free_interval(s, p, eps);
    for (int k = 0; k <= 200; ++k) {
      const double t = k / 200.0;
      const double d = (s.at(t) - p).norm();
      if (d < eps - 1e-7) EXPECT_TRUE(!iv.empty() && iv.lo <= t + 1e-9 && t <= iv.hi + 1e-9);
      if (d > eps + 1e-7) EXPECT_TRUE(iv.empty() || t < iv.lo || t > iv.hi);
    }
  }
}

TEST(Geom, SegmentDistance) {
  EXPECT_NEAR(dist_segment_segment(seg(0, 0, 1, 0), seg(0, 1, 1, 1)), 1.0, 1e-12);
  EXPECT_NEAR(dist_segment_segment(seg(0, 0, 2, 2), seg(0, 2, 2, 0)), 0.0, 1e-12);
  EXPECT_NEAR(dist_segment_segment(seg(0, 0, 1, 0), seg(2, 1, 3, 1)), std::sqrt(2.0), 1e-12);
}

TEST(Geom, TemplatedOnScalar) {
  const Segment2<float> s{Point2<float>(0, 0), Point2<float>(1, 0)};
  EXPECT_NEAR(dist_point_segment(Point2<float>(0.5f, 2.0f), s), 2.0f, 1e-6f);
}
