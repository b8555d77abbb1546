#ifndef MATCHKIT_DETAIL_UNION_FIND_HPP
#define MATCHKIT_DETAIL_UNION_FIND_HPP

#include <Eigen/Dense>

#include <cstdlib>
#include <numeric>
#include <vector>

namespace matchkit::detail {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(std::size_t n = 0) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

using Offset = Eigen::Vector2i;

/// Sublattice of Z^2 kept as a reduced basis {(a, b), (0, c)}.
class Lattice {
 public:
  void add(Offset g) {
    // Euclid on the first coordinate between g and first_.
    while (g.x() != 0) {
      if (first_.x() == 0) {
        std::swap(first_, g);
        continue;
      }
      const int q = g.x() / first_.x();
      g -= q * first_;
      if (g.x() != 0) std::swap(first_, g);
    }
    if (first_.x() < 0) first_ = -first_;
    c_ = std::gcd(c_, std::abs(g.y()));
    if (c_ != 0) first_.y() = ((first_.y() % c_) + c_) % c_;
  }
  void merge(const Lattice& o) {
    add(o.first_);
    add(Offset(0, o.c_));
  }
  /// Generator of the lattice's intersection with {0} x Z, as c >= 0.
  int vertical_period() const { return first_.x() == 0 ? std::gcd(c_, std::abs(first_.y())) : c_; }
  bool contains(const Offset& v) const {
    if (first_.x() == 0) {
      if (v.x() != 0) return false;
      return c_ == 0 ? v.y() == 0 : v.y() % c_ == 0;
    }
    if (v.x() % first_.x() != 0) return false;
    const long k = v.x() / first_.x();
    const long rest = v.y() - k * first_.y();
    return c_ == 0 ? rest == 0 : rest % c_ == 0;
  }

 private:
  Offset first_ = Offset::Zero();
  int c_ = 0;
};

/// Union-find over points of a periodic space. Each element carries its
/// lift offset relative to its root; cycles with a nonzero net offset are
/// collected into the component's lattice of periods.
class PeriodicUnionFind {
 public:
  explicit PeriodicUnionFind(std::size_t n) : parent_(n), offset_(n, Offset::Zero()), lattice_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::pair<int, Offset> find(int x) {
    Offset total = Offset::Zero();
    int r = x;
    while (parent_[r] != r) {
      total += offset_[r];
      r = parent_[r];
    }
    // Path compression.
    Offset acc = total;
    while (parent_[x] != x) {
      const int next = parent_[x];
      const Offset here = offset_[x];
      parent_[x] = r;
      offset_[x] = acc;
      acc -= here;
      x = next;
    }
    return {r, total};
  }
  /// Record that lift(b) = lift(a) + d.
  void unite(int a, int b, Offset d) {
    auto [ra, oa] = find(a);
    auto [rb, ob] = find(b);
    // lift(x) = lift(root) + offset(x)
    if (ra == rb) {
      const Offset g = oa + d - ob;
      if (g != Offset::Zero()) lattice_[ra].add(g);
      return;
    }
    // lift(rb) = lift(b) - ob = lift(a) + d - ob = lift(ra) + oa + d - ob
    parent_[rb] = ra;
    offset_[rb] = oa + d - ob;
    lattice_[ra].merge(lattice_[rb]);
  }
  const Lattice& lattice(int x) { return lattice_[find(x).first]; }

 private:
  std::vector<int> parent_;
  std::vector<Offset> offset_;
  std::vector<Lattice> lattice_;
};

}  // namespace matchkit::detail

#endif  // MATCHKIT_DETAIL_UNION_FIND_HPP
