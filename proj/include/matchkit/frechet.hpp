#ifndef MATCHKIT_FRECHET_HPP
#define MATCHKIT_FRECHET_HPP

#include "matchkit/geom.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace matchkit {

/// Thrown when operands do not satisfy an operation's preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered point sequence. A closed polyline joins its last point back to
/// the first; the first point is not repeated in storage.
struct Polyline {
  std::vector<Point> points;
  bool closed = false;

  std::size_t size() const { return points.size(); }
  std::size_t segment_count() const {
    if (points.size() < 2) return 0;
    return closed ? points.size() : points.size() - 1;
  }
  /// Vertex i of the (cyclically extended) vertex sequence.
  const Point& vertex(std::size_t i) const { return points[i % points.size()]; }
  Segment segment(std::size_t i) const { return {vertex(i), vertex(i + 1)}; }
};

/// Throws InputError unless the polyline has at least two points, no equal
/// consecutive points, and (if closed) distinct first and last points.
void check_polyline(const Polyline& c);

enum class Monotonicity { Strong, Weak };
enum class Topology { Open, Closed };

struct FrechetVariant {
  Monotonicity monotonicity = Monotonicity::Strong;
  Topology topology = Topology::Open;
};

bool is_simple(const Polyline& c);

/// True iff the (weak or strong, open or closed) Fréchet distance between a
/// and b is at most eps. Closed curves keep the orientation they are given.
bool decide_frechet(const Polyline& a, const Polyline& b, double eps, FrechetVariant v);

inline constexpr double kDefaultFrechetTolerance = 1e-6;

/// Bisection on decide_frechet; the result is within tol of the distance.
double compute_frechet(const Polyline& a, const Polyline& b, FrechetVariant v,
                       double tol = kDefaultFrechetTolerance);

}  // namespace matchkit

#endif  // MATCHKIT_FRECHET_HPP
