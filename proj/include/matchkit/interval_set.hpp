#ifndef MATCHKIT_INTERVAL_SET_HPP
#define MATCHKIT_INTERVAL_SET_HPP

#include "matchkit/geom.hpp"

#include <algorithm>
#include <vector>

namespace matchkit {

/// Sorted union of disjoint closed intervals on the real line.
class IntervalSet {
 public:
  IntervalSet() = default;

  bool empty() const { return parts_.empty(); }
  const std::vector<UnitInterval>& parts() const { return parts_; }
  void clear() { parts_.clear(); }

  /// Appends an interval; intervals must arrive sorted by lo.
  void push_sorted(UnitInterval iv) {
    if (iv.empty()) return;
    if (!parts_.empty() && iv.lo <= parts_.back().hi) {
      parts_.back().hi = std::max(parts_.back().hi, iv.hi);
      return;
    }
    parts_.push_back(iv);
  }

  void insert(UnitInterval iv) {
    if (iv.empty()) return;
    auto it = std::lower_bound(parts_.begin(), parts_.end(), iv.lo,
                               [](const UnitInterval& x, double v) { return x.hi < v; });
    auto last = it;
    while (last != parts_.end() && last->lo <= iv.hi) {
      iv.lo = std::min(iv.lo, last->lo);
      iv.hi = std::max(iv.hi, last->hi);
      ++last;
    }
    it = parts_.erase(it, last);
    parts_.insert(it, iv);
  }

  void unite(const IntervalSet& o) {
    if (o.empty()) return;
    if (empty()) {
      parts_ = o.parts_;
      return;
    }
    std::vector<UnitInterval> merged;
    merged.reserve(parts_.size() + o.parts_.size());
    std::merge(parts_.begin(), parts_.end(), o.parts_.begin(), o.parts_.end(), std::back_inserter(merged),
               [](const UnitInterval& x, const UnitInterval& y) { return x.lo < y.lo; });
    parts_.clear();
    for (const auto& iv : merged) push_sorted(iv);
  }

  bool contains(double t) const { return index_of(t) >= 0; }

  /// Index of the part containing t, or -1.
  int index_of(double t) const {
    auto it = std::lower_bound(parts_.begin(), parts_.end(), t,
                               [](const UnitInterval& x, double v) { return x.hi < v; });
    if (it == parts_.end() || it->lo > t) return -1;
    return static_cast<int>(it - parts_.begin());
  }

  /// First part whose hi is >= t, or parts().size().
  std::size_t first_at_or_after(double t) const {
    auto it = std::lower_bound(parts_.begin(), parts_.end(), t,
                               [](const UnitInterval& x, double v) { return x.hi < v; });
    return static_cast<std::size_t>(it - parts_.begin());
  }

  IntervalSet clipped(UnitInterval window) const {
    IntervalSet r;
    for (const auto& iv : parts_) r.push_sorted(intersect(iv, window));
    return r;
  }

  bool operator==(const IntervalSet& o) const { return parts_ == o.parts_; }

 private:
  std::vector<UnitInterval> parts_;
};

}  // namespace matchkit

#endif  // MATCHKIT_INTERVAL_SET_HPP
