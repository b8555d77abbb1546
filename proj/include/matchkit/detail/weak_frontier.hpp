#ifndef MATCHKIT_DETAIL_WEAK_FRONTIER_HPP
#define MATCHKIT_DETAIL_WEAK_FRONTIER_HPP

#include "matchkit/detail/curve_index.hpp"

#include <vector>

namespace matchkit::detail {

/// How the free components of the current vertex line are connected to
/// each other, and which of them the walk's start can reach, through the
/// strips walked so far under weak monotonicity.
struct WeakState {
  std::vector<int> label;    // per component of the vertex's free set
  std::vector<char> origin;  // per label

  bool operator<(const WeakState& o) const {
    return label != o.label ? label < o.label : origin < o.origin;
  }
};

/// Like WeakState, but on the universal cover of the closed curve: each
/// component's lift is tracked relative to its class, so a cycle search can
/// tell whether the start component is reached one lap later.
struct LiftedState {
  std::vector<int> cls;         // per component
  std::vector<int> off;         // lift minus the lift of the class's first component
  std::vector<int> period;      // per class; 0 when no loop winds around
  std::vector<char> origin;     // per class
  std::vector<int> origin_off;  // per class: lift of the start component minus the first one's

  bool operator==(const LiftedState& o) const {
    return cls == o.cls && off == o.off && period == o.period && origin == o.origin && origin_off == o.origin_off;
  }
};

/// Free components of vertex lines over a curve index. With `seam` set the
/// parameter range is a circle (closed curve, one lap) and the first and
/// last parts of a vertex's free set join.
class WeakFrontier {
 public:
  WeakFrontier(const CurveIndex& index, bool seam) : index_(index), seam_(seam) {}

  int component_count(int v) const;
  /// Component containing global parameter t, or -1.
  int component_of(int v, double t) const;

  /// Every component labelled apart; `origin` flags the reachable ones.
  WeakState initial(int v, const std::vector<char>& origin) const;

  /// Walks the strip of edge u-w. Returns false if no component of w is
  /// connected to the origin afterwards.
  bool step(int u, int w, int edge, const WeakState& in, WeakState& out) const;

  /// Only component c0 of v is the origin. Needs a seam.
  LiftedState initial_lifted(int v, int c0) const;
  bool step_lifted(int u, int w, int edge, const LiftedState& in, LiftedState& out) const;
  /// Whether component c of the current vertex, one lap up, is joined to
  /// the origin.
  static bool closes(const LiftedState& s, int c);

 private:
  bool wraps(int v) const;
  /// The whole circle is free at v.
  bool full(int v) const;
  /// Lift of the piece of v's free set containing global parameter t,
  /// relative to its component's reference lift.
  int lift_of(int v, double t) const;

  const CurveIndex& index_;
  bool seam_;
};

}  // namespace matchkit::detail

#endif  // MATCHKIT_DETAIL_WEAK_FRONTIER_HPP
