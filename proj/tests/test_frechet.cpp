#include "matchkit/frechet.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace matchkit;

namespace {

Polyline open(std::initializer_list<std::pair<double, double>> pts) {
  Polyline c;
  for (auto [x, y] : pts) c.points.emplace_back(x, y);
  return c;
}

Polyline closed(std::initializer_list<std::pair<double, double>> pts) {
  Polyline c = open(pts);
  c.closed = true;
  return c;
}

constexpr FrechetVariant kStrongOpen{Monotonicity::Strong, Topology::Open};
constexpr FrechetVariant kWeakOpen{Monotonicity::Weak, Topology::Open};
constexpr FrechetVariant kStrongClosed{Monotonicity::Strong, Topology::Closed};
constexpr FrechetVariant kWeakClosed{Monotonicity::Weak, Topology::Closed};

}  // namespace

TEST(Frechet, ParallelSegments) {
  const auto a = open({{0, 0}, {1, 0}});
  const auto b = open({{0, 1}, {1, 1}});
  EXPECT_TRUE(decide_frechet(a, b, 1.0, kStrongOpen));
  EXPECT_FALSE(decide_frechet(a, b, 0.999, kStrongOpen));
  EXPECT_NEAR(compute_frechet(a, b, kStrongOpen), 1.0, 2e-6);
}

TEST(Frechet, BacktrackSeparatesWeakFromStrong) {
  // b runs forward, back, forward; a weak matching can follow it but a
  // monotone one has to stretch across the fold.
  const auto a = open({{0, 0}, {2, 0}, {1, 0}, {3, 0}});
  const auto b = open({{0, 0}, {3, 0}});
  EXPECT_NEAR(compute_frechet(a, b, kStrongOpen), 0.5, 2e-6);
  EXPECT_NEAR(compute_frechet(a, b, kWeakOpen), 0.0, 2e-6);
}

TEST(Frechet, EndpointsMustMatch) {
  const auto a = open({{0, 0}, {1, 0}});
  const auto b = open({{1, 0}, {0, 0}});
  EXPECT_FALSE(decide_frechet(a, b, 0.99, kStrongOpen));
  EXPECT_FALSE(decide_frechet(a, b, 0.99, kWeakOpen));
  EXPECT_TRUE(decide_frechet(a, b, 1.0, kStrongOpen));
}

TEST(Frechet, ClosedIgnoresStartPoint) {
  const auto a = closed({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto b = closed({{1, 1}, {0, 1}, {0, 0}, {1, 0}});
  EXPECT_TRUE(decide_frechet(a, b, 0.0, kStrongClosed));
  EXPECT_TRUE(decide_frechet(a, b, 0.0, kWeakClosed));
  // Same square with the start in the middle of an edge.
  const auto c = closed({{0.5, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}});
  EXPECT_TRUE(decide_frechet(a, c, 1e-9, kStrongClosed));
}

TEST(Frechet, ClosedRespectsOrientation) {
  const auto a = closed({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto b = closed({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  EXPECT_FALSE(decide_frechet(a, b, 0.4, kStrongClosed));
  EXPECT_FALSE(decide_frechet(a, b, 0.4, kWeakClosed));
}

TEST(Frechet, WeakClosedNeedsToWindOnce) {
  // b runs around the square twice. Every point of b is on a, but a
  // matching that wraps a once cannot wrap b once.
  const auto a = closed({{0, 0}, {4, 0}, {4, 4}, {0, 4}});
  const auto b = closed({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {0, 0.5}, {4, 0.5}, {4, 4}, {0, 4}});
  EXPECT_TRUE(decide_frechet(a, a, 0.0, kWeakClosed));
  EXPECT_FALSE(decide_frechet(a, b, 1.0, kWeakClosed));
  EXPECT_FALSE(decide_frechet(a, b, 1.0, kStrongClosed));
}

TEST(Frechet, RejectsBadInput) {
  EXPECT_THROW(decide_frechet(open({{0, 0}}), open({{0, 0}, {1, 0}}), 1, kStrongOpen), InputError);
  EXPECT_THROW(decide_frechet(open({{0, 0}, {0, 0}}), open({{0, 0}, {1, 0}}), 1, kStrongOpen), InputError);
  EXPECT_THROW(decide_frechet(open({{0, 0}, {1, 0}}), open({{0, 0}, {1, 0}}), -1, kStrongOpen), InputError);
  EXPECT_THROW(decide_frechet(open({{0, 0}, {1, 0}}), closed({{0, 0}, {1, 0}, {0, 1}}), 1, kStrongOpen),
               InputError);
}

TEST(Frechet, Simplicity) {
  EXPECT_TRUE(is_simple(open({{0, 0}, {1, 0}, {1, 1}})));
  EXPECT_FALSE(is_simple(open({{0, 0}, {2, 0}, {2, 1}, {1, -1}})));
  EXPECT_TRUE(is_simple(closed({{0, 0}, {1, 0}, {1, 1}})));
  EXPECT_FALSE(is_simple(closed({{0, 0}, {1, 1}, {1, 0}, {0, 1}})));
  // Backtracking onto the previous segment.
  EXPECT_FALSE(is_simple(open({{0, 0}, {2, 0}, {1, 0}})));
}

TEST(Frechet, StrongOpenAgreesWithDiscreteOracle) {
  std::mt19937 rng(11);
  const double h = 0.02;
  for (int it = 0; it < 60; ++it) {
    const auto a = oracle::random_polyline(rng, 2, 5, false);
    const auto b = oracle::random_polyline(rng, 2, 5, false);
    const double d = compute_frechet(a, b, kStrongOpen);
    const double dd = oracle::discrete_frechet(oracle::sample(a, h), oracle::sample(b, h));
    EXPECT_LE(d, dd + 2e-6);
    EXPECT_GE(d, dd - 2 * h);
  }
}

TEST(Frechet, StrongClosedAgreesWithDiscreteOracle) {
  std::mt19937 rng(12);
  const double h = 0.05;
  for (int it = 0; it < 25; ++it) {
    const auto a = oracle::random_polyline(rng, 3, 4, true);
    const auto b = oracle::random_polyline(rng, 3, 4, true);
    const double d = compute_frechet(a, b, kStrongClosed);
    const double dd = oracle::discrete_frechet_closed(oracle::sample(a, h), oracle::sample(b, h));
    EXPECT_LE(d, dd + 2e-6);
    EXPECT_GE(d, dd - 2 * h);
  }
}

TEST(Frechet, ClosedNeverExceedsAnyFixedStart) {
  std::mt19937 rng(13);
  for (int it = 0; it < 100; ++it) {
    auto a = oracle::random_polyline(rng, 3, 5, true);
    auto b = oracle::random_polyline(rng, 3, 5, true);
    Polyline ao = a, bo = b;
    ao.closed = bo.closed = false;
    ao.points.push_back(a.points.front());
    bo.points.push_back(b.points.front());
    EXPECT_LE(compute_frechet(a, b, kStrongClosed), compute_frechet(ao, bo, kStrongOpen) + 2e-6);
    EXPECT_LE(compute_frechet(a, b, kWeakClosed), compute_frechet(ao, bo, kWeakOpen) + 2e-6);
    EXPECT_LE(compute_frechet(a, b, kWeakClosed), compute_frechet(a, b, kStrongClosed) + 2e-6);
  }
}

TEST(Frechet, MetricProperties) {
  constexpr double tol = 1e-9;
  std::mt19937 rng(14);
  for (int it = 0; it < 200; ++it) {
    const FrechetVariant v = it % 2 ? kStrongClosed : kStrongOpen;
    const bool cl = v.topology == Topology::Closed;
    const auto a = oracle::random_polyline(rng, 2, 5, cl);
    const auto b = oracle::random_polyline(rng, 2, 5, cl);
    const auto c = oracle::random_polyline(rng, 2, 5, cl);
    const double ab = compute_frechet(a, b, v, tol);
    EXPECT_NEAR(ab, compute_frechet(b, a, v, tol), 2 * tol);
    EXPECT_LE(compute_frechet(a, c, v, tol), ab + compute_frechet(b, c, v, tol) + 3 * tol);
    EXPECT_LE(compute_frechet(a, b, {Monotonicity::Weak, v.topology}, tol), ab + 2 * tol);
    EXPECT_TRUE(decide_frechet(a, b, ab, v));
    if (ab > 2 * tol) EXPECT_FALSE(decide_frechet(a, b, ab - 2 * tol, v));
  }
}
