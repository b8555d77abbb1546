#ifndef MATCHKIT_DETAIL_FREE_SPACE_HPP
#define MATCHKIT_DETAIL_FREE_SPACE_HPP

#include "matchkit/frechet.hpp"

#include <vector>

namespace matchkit::detail {

/// Free-space diagram of curve a (rows) against curve b (columns). Column j
/// uses segment j mod |b|, so a closed b may be unrolled several times.
class FreeSpaceGrid {
 public:
  FreeSpaceGrid(const Polyline& a, const Polyline& b, double eps, std::size_t columns)
      : rows_(a.segment_count()), cols_(columns), left_(rows_ * (cols_ + 1)), bottom_((rows_ + 1) * cols_) {
    const std::size_t q = b.segment_count();
    for (std::size_t i = 0; i < rows_; ++i) {
      const Segment sa = a.segment(i);
      for (std::size_t j = 0; j <= cols_; ++j) left_[i * (cols_ + 1) + j] = free_interval(sa, b.vertex(j), eps);
    }
    for (std::size_t i = 0; i <= rows_; ++i) {
      const Point& pa = a.vertex(i);
      for (std::size_t j = 0; j < cols_; ++j) bottom_[i * cols_ + j] = free_interval(b.segment(j % q), pa, eps);
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t columns() const { return cols_; }
  /// Free part (a-parameter) of the vertical line at column boundary j in row i.
  const UnitInterval& left(std::size_t i, std::size_t j) const { return left_[i * (cols_ + 1) + j]; }
  /// Free part (b-parameter) of the horizontal line at a-vertex i in column j.
  const UnitInterval& bottom(std::size_t i, std::size_t j) const { return bottom_[i * cols_ + j]; }

  /// Monotone reachability from (row 0, column j0 at param s) to
  /// (row rows(), column j1 at param e), using columns j0..j1 only.
  bool reaches(std::size_t j0, double s, std::size_t j1, double e) const {
    const std::size_t w = j1 - j0 + 1;
    std::vector<UnitInterval> rb(w), rl(w + 1);
    // Row 0 line.
    rb[0] = intersect(bottom(0, j0), UnitInterval{s, 1.0});
    for (std::size_t k = 1; k < w; ++k) {
      const UnitInterval& f = bottom(0, j0 + k);
      rb[k] = (rb[k - 1].contains(1.0) && f.contains(0.0)) ? f : UnitInterval::empty_interval();
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      UnitInterval from_left = UnitInterval::empty_interval();
      for (std::size_t k = 0; k < w; ++k) {
        const std::size_t j = j0 + k;
        const UnitInterval from_bottom = rb[k];
        const UnitInterval& top_free = bottom(i + 1, j);
        const UnitInterval& right_free = left(i, j + 1);
        UnitInterval top = UnitInterval::empty_interval();
        UnitInterval right = UnitInterval::empty_interval();
        if (!from_left.empty()) {
          top = top_free;
        } else if (!from_bottom.empty()) {
          top = intersect(top_free, UnitInterval{from_bottom.lo, 1.0});
        }
        if (!from_bottom.empty()) {
          right = right_free;
        } else if (!from_left.empty()) {
          right = intersect(right_free, UnitInterval{from_left.lo, 1.0});
        }
        rb[k] = top;
        from_left = right;
      }
    }
    return rb[w - 1].contains(e);
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<UnitInterval> left_;
  std::vector<UnitInterval> bottom_;
};

}  // namespace matchkit::detail

#endif  // MATCHKIT_DETAIL_FREE_SPACE_HPP
