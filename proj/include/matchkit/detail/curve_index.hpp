#ifndef MATCHKIT_DETAIL_CURVE_INDEX_HPP
#define MATCHKIT_DETAIL_CURVE_INDEX_HPP

#include "matchkit/frechet.hpp"
#include "matchkit/interval_set.hpp"
#include "matchkit/network.hpp"

#include <vector>

namespace matchkit::detail {

/// Free space of every network vertex and edge against a curve, in the
/// curve's global parameter t in [0, n * unroll] where n is its segment
/// count. A closed curve is unrolled twice for monotone cycle searches.
class CurveIndex {
 public:
  CurveIndex(const Network& net, const Polyline& curve, double eps, int unroll);

  const Network& network() const { return net_; }
  const Polyline& curve() const { return curve_; }
  double eps() const { return eps_; }
  int segments() const { return n_; }
  /// Upper end of the global parameter range.
  double span() const { return static_cast<double>(n_ * unroll_); }

  /// Free set of vertex v over the whole parameter range.
  const IntervalSet& vertex_free(int v) const { return vertex_free_[v]; }
  /// Free interval of v on column j (curve segment j mod n), local param.
  UnitInterval vertex_column(int v, int j) const;

  /// Monotone propagation along edge from -> to: the curve parameters at
  /// which the walk can arrive at `to`, extended by waiting at `to`.
  IntervalSet propagate(int from, int to, const IntervalSet& reach) const;
  /// Extends every interval up to the end of the free component of v
  /// containing its start.
  IntervalSet extend(int v, const IntervalSet& reach) const;

  /// Columns (unrolled once, 0..n-1) whose curve segment comes within eps
  /// of edge e.
  const std::vector<int>& edge_columns(int e) const;

 private:
  const Network& net_;
  Polyline curve_;
  double eps_;
  int n_;
  int unroll_;
  std::vector<std::vector<std::pair<int, UnitInterval>>> vertex_columns_;
  std::vector<IntervalSet> vertex_free_;
  mutable std::vector<std::vector<int>> edge_columns_;
  mutable std::vector<char> edge_columns_ready_;
};

}  // namespace matchkit::detail

#endif  // MATCHKIT_DETAIL_CURVE_INDEX_HPP
