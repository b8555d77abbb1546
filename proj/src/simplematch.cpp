#include "matchkit/simplematch.hpp"

#include "matchkit/detail/curve_index.hpp"
#include "matchkit/detail/weak_frontier.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <cstring>
#include <unordered_set>

namespace matchkit {

std::uint64_t default_budget() {
  if (const char* env = std::getenv("MATCHKIT_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

namespace {

using detail::CurveIndex;

using detail::WeakFrontier;
using detail::WeakState;

class Searcher {
 public:
  Searcher(const Network& net, const Polyline& curve, const MatchQuery& q, const SearchOptions& opts,
           std::size_t limit)
      : net_(net),
        curve_(curve),
        q_(q),
        opts_(opts),
        limit_(limit),
        cycle_(q.shape == WalkShape::Cycle),
        weak_(q.monotonicity == Monotonicity::Weak),
        edge_mode_(q.simplicity == Simplicity::Edge),
        index_(net, curve, q.eps, (cycle_ && !weak_) ? 2 : 1),
        frontier_(index_, cycle_),
        used_v_(net.vertex_count(), 0),
        used_e_(net.edge_count(), 0),
        banned_v_(net.vertex_count(), 0),
        banned_e_(net.edge_count(), 0) {
    for (int v : opts.forbidden_vertices) {
      if (v >= 0 && v < static_cast<int>(net.vertex_count())) banned_v_[v] = 1;
    }
    for (int e : opts.forbidden_edges) {
      if (e >= 0 && e < static_cast<int>(net.edge_count())) banned_e_[e] = 1;
    }
  }

  SearchStatus run() {
    if (cycle_ && !opts_.start_vertex) {
      if (weak_) run_anchored_weak();
      else run_anchored();
    } else {
      run_plain();
    }
    if (exhausted_) return SearchStatus::BudgetExhausted;
    return results_.empty() ? SearchStatus::Infeasible : SearchStatus::Found;
  }

  std::vector<Walk> take_results() { return std::move(results_); }
  std::uint64_t expansions() const { return expansions_; }

 private:
  void run_plain() {
    const int n = static_cast<int>(net_.vertex_count());
    for (int v0 = 0; v0 < n && !stop(); ++v0) {
      if (opts_.start_vertex && *opts_.start_vertex != v0) continue;
      if (banned_v_[v0]) continue;
      const IntervalSet& fs = index_.vertex_free(v0);
      if (fs.empty()) continue;
      start_ = v0;
      path_.assign(1, v0);
      used_v_[v0] = 1;
      if (!weak_) {
        IntervalSet start;
        if (cycle_) {
          start = index_.extend(v0, fs.clipped({0.0, double(index_.segments())}));
        } else {
          if (!fs.contains(0.0)) {
            used_v_[v0] = 0;
            continue;
          }
          IntervalSet origin;
          origin.push_sorted({0.0, 0.0});
          start = index_.extend(v0, origin);
        }
        dfs_strong(v0, start);
      } else {
        if (!cycle_ && !fs.contains(0.0)) {
          used_v_[v0] = 0;
          continue;
        }
        std::vector<char> origin(frontier_.component_count(v0), cycle_ ? 1 : 0);
        if (!cycle_) origin[frontier_.component_of(v0, 0.0)] = 1;
        dfs_weak(v0, frontier_.initial(v0, origin));
      }
      used_v_[v0] = 0;
    }
  }

  /// Strong cycles. Some curve vertex p is matched to a point of an edge
  /// within eps of it, so every matching cycle can be rotated to start with
  /// one of those edges. The start vertex is pinned to a single curve
  /// parameter: the earliest reachable end is a step function of the start
  /// whose steps sit at right ends of free intervals on the start column,
  /// so those ends are the only starts worth trying. With one start the
  /// reach sets are exact, which makes dead states safe to memoize.
  void run_anchored() {
    const int n = index_.segments();
    for (int e : anchor_edges()) {
      const Edge& ed = net_.edges()[e];
      for (int dir = 0; dir < 2 && !stop(); ++dir) {
        const int a = dir == 0 ? ed.u : ed.v;
        const int b = dir == 0 ? ed.v : ed.u;
        if (banned_v_[a] || banned_v_[b]) continue;
        for (int j0 = 0; j0 < n && !stop(); ++j0) {
          const UnitInterval start = index_.vertex_column(a, j0);
          if (start.empty()) continue;
          for (double c : start_candidates(j0, start)) {
            if (stop()) break;
            search_from(a, b, e, j0 + c);
          }
        }
      }
    }
  }

  /// Edges within eps of the curve vertex that has the fewest of them.
  std::vector<int> anchor_edges() const {
    std::vector<int> near;
    for (std::size_t r = 0; r < curve_.points.size(); ++r) {
      std::vector<int> es;
      for (int e = 0; e < static_cast<int>(net_.edge_count()); ++e) {
        if (!banned_e_[e] && dist_point_segment(curve_.points[r], net_.segment(e)) <= q_.eps + kTolerance)
          es.push_back(e);
      }
      if (r == 0 || es.size() < near.size()) near = std::move(es);
    }
    return near;
  }

  /// Weak cycles, anchored the same way. Under weak monotonicity only the
  /// free component of the start matters, not the exact parameter, and the
  /// lifted state decides closure exactly, so memoizing dead states is safe
  /// once the key says which part of the network is still reachable.
  void run_anchored_weak() {
    for (int e : anchor_edges()) {
      const Edge& ed = net_.edges()[e];
      for (int dir = 0; dir < 2 && !stop(); ++dir) {
        const int a = dir == 0 ? ed.u : ed.v;
        const int b = dir == 0 ? ed.v : ed.u;
        if (banned_v_[a] || banned_v_[b]) continue;
        for (int c0 = 0; c0 < frontier_.component_count(a) && !stop(); ++c0) {
          start_ = a;
          origin_component_ = c0;
          dead_.clear();
          detail::LiftedState next;
          if (!charge()) return;
          if (!frontier_.step_lifted(a, b, e, frontier_.initial_lifted(a, c0), next)) continue;
          path_.assign(1, a);
          used_v_[a] = 1;
          enter(b, e);
          dfs_weak_anchored(b, next);
          leave(b, e);
          used_v_[a] = 0;
        }
      }
    }
  }

  /// Order-free hash of what the rest of the walk may use: the vertices
  /// (edges in edge mode) reachable from v without reusing any, or 0 when
  /// the start cannot be reached again.
  std::uint64_t region_hash(int v) {
    std::uint64_t h = 0;
    bool back = false;
    stamp_.resize(net_.vertex_count(), 0);
    ++epoch_;
    queue_.assign(1, v);
    stamp_[v] = epoch_;
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      const int x = queue_[i];
      for (const Neighbor& nb : net_.neighbors(x)) {
        if (used_e_[nb.edge] || banned_e_[nb.edge] || banned_v_[nb.vertex]) continue;
        if (index_.vertex_free(nb.vertex).empty()) continue;
        if (nb.vertex == start_) {
          back = back || edge_mode_ || x != v || path_.size() >= 3;
          if (edge_mode_) h += mix(0x100000000ULL + static_cast<std::uint64_t>(nb.edge));
          continue;
        }
        if (!edge_mode_ && used_v_[nb.vertex]) continue;
        if (edge_mode_) h += mix(0x100000000ULL + static_cast<std::uint64_t>(nb.edge));
        if (stamp_[nb.vertex] == epoch_) continue;
        stamp_[nb.vertex] = epoch_;
        if (!edge_mode_) h += mix(static_cast<std::uint64_t>(nb.vertex));
        queue_.push_back(nb.vertex);
      }
    }
    return back ? mix(h) | 1 : 0;
  }

  bool dfs_weak_anchored(int v, const detail::LiftedState& state) {
    const std::uint64_t region = region_hash(v);
    if (region == 0) return false;
    std::uint64_t h1 = mix(static_cast<std::uint64_t>(v) ^ region), h2 = mix(h1 + 0x51ed27);
    auto fold = [&](const auto& vec) {
      for (auto x : vec) {
        h1 = mix(h1 ^ static_cast<std::uint64_t>(x));
        h2 = mix(h2 + static_cast<std::uint64_t>(x) * 0x2545f4914f6cdd1dULL);
      }
      h1 = mix(h1 ^ 0xfeed);
      h2 = mix(h2 ^ 0xbeef);
    };
    fold(state.cls);
    fold(state.off);
    fold(state.period);
    fold(state.origin);
    fold(state.origin_off);
    const std::pair<std::uint64_t, std::uint64_t> key{h1, h2};
    if (dead_.count(key)) return false;
    bool closed = false;
    for (const Neighbor& nb : net_.neighbors(v)) {
      if (stop()) return true;
      const int w = nb.vertex;
      if (banned_e_[nb.edge] || banned_v_[w] || used_e_[nb.edge]) continue;
      const bool closing = w == start_;
      if (closing && !edge_mode_ && path_.size() < 3) continue;
      if (!closing && !edge_mode_ && used_v_[w]) continue;
      if (!charge()) return true;
      detail::LiftedState next;
      if (!frontier_.step_lifted(v, w, nb.edge, state, next)) continue;
      if (closing && detail::WeakFrontier::closes(next, origin_component_)) {
        used_e_[nb.edge] = 1;
        if (closes_exactly()) {
          closed = true;
          record_cycle();
        }
        used_e_[nb.edge] = 0;
      }
      if (closing && !edge_mode_) continue;
      enter(w, nb.edge);
      if (dfs_weak_anchored(w, next)) closed = true;
      leave(w, nb.edge);
    }
    if (!closed && !stop()) dead_.insert(key);
    return closed;
  }

  std::vector<double> start_candidates(int j0, UnitInterval start) const {
    std::vector<double> out{start.hi};
    for (int u = 0; u < static_cast<int>(net_.vertex_count()); ++u) {
      const UnitInterval iv = index_.vertex_column(u, j0);
      if (!iv.empty() && iv.hi >= start.lo && iv.hi <= start.hi) out.push_back(iv.hi);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void search_from(int a, int b, int e, double s) {
    const double n = static_cast<double>(index_.segments());
    start_ = a;
    target_ = s + n;
    dead_.clear();
    IntervalSet origin;
    origin.push_sorted({s, s});
    const IntervalSet reach =
        index_.propagate(a, b, index_.extend(a, origin)).clipped({s, target_ + kTolerance});
    if (!charge() || reach.empty()) return;
    path_.assign(1, a);
    used_v_[a] = 1;
    enter(b, e);
    dfs_anchored(b, reach);
    leave(b, e);
    used_v_[a] = 0;
  }

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  /// Memo key: position, reach and the used vertices (or edges) the walk
  /// could still run into, hashed to 128 bits. The used set is hashed
  /// order-free so it needs no sorting.
  std::pair<std::uint64_t, std::uint64_t> state_key(int v, const IntervalSet& reach) const {
    const double lo = reach.parts().front().lo - kTolerance;
    auto live = [&](int u) {
      const IntervalSet& fs = index_.vertex_free(u);
      const std::size_t k = fs.first_at_or_after(lo);
      return k < fs.parts().size() && fs.parts()[k].lo <= target_ + kTolerance;
    };
    std::uint64_t h1 = mix(static_cast<std::uint64_t>(v)), h2 = mix(h1);
    for (const auto& iv : reach.parts()) {
      std::uint64_t a, b;
      std::memcpy(&a, &iv.lo, sizeof a);
      std::memcpy(&b, &iv.hi, sizeof b);
      h1 = mix(h1 ^ a) ^ b;
      h2 = mix(h2 + b) ^ mix(a);
    }
    std::uint64_t s1 = 0, s2 = 0;
    auto add = [&](std::uint64_t id) {
      const std::uint64_t m = mix(id);
      s1 += m;
      s2 ^= mix(m);
    };
    if (edge_mode_) {
      for (std::size_t i = 0; i + 1 < path_.size(); ++i) {
        const int x = path_[i], y = path_[i + 1];
        if (live(x) || live(y)) add(static_cast<std::uint64_t>(net_.edge_between(x, y)));
      }
    } else {
      for (int u : path_) {
        if (live(u)) add(static_cast<std::uint64_t>(u));
      }
    }
    return {mix(h1 ^ s1), mix(h2 + s2)};
  }

  struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const { return k.first; }
  };

  /// Returns true when some closing step was reached below this state.
  bool dfs_anchored(int v, const IntervalSet& reach) {
    const auto key = state_key(v, reach);
    if (dead_.count(key)) return false;
    bool closed = false;
    for (const Neighbor& nb : net_.neighbors(v)) {
      if (stop()) return true;
      const int w = nb.vertex;
      if (banned_e_[nb.edge] || banned_v_[w] || used_e_[nb.edge]) continue;
      const bool closing = w == start_;
      if (closing && !edge_mode_ && path_.size() < 3) continue;
      if (!closing && !edge_mode_ && used_v_[w]) continue;
      if (!charge()) return true;
      const IntervalSet next = index_.propagate(v, w, reach).clipped({0.0, target_ + kTolerance});
      if (next.empty()) continue;
      if (closing && !next.clipped({target_ - kTolerance, target_ + kTolerance}).empty()) {
        used_e_[nb.edge] = 1;
        if (closes_exactly()) {
          closed = true;
          record_cycle();
        }
        used_e_[nb.edge] = 0;
      }
      if (closing && !edge_mode_) continue;
      enter(w, nb.edge);
      if (dfs_anchored(w, next)) closed = true;
      leave(w, nb.edge);
    }
    if (!closed && !stop()) dead_.insert(key);
    return closed;
  }

  bool stop() const { return exhausted_ || results_.size() >= limit_; }

  /// Returns false if this step should be skipped. Sets `closing` when the
  /// step returns to the start of a cycle.
  bool admissible(int v, const Neighbor& nb, bool& closing) const {
    const int w = nb.vertex;
    closing = false;
    if (banned_e_[nb.edge] || banned_v_[w]) return false;
    if (used_e_[nb.edge]) return false;
    if (cycle_) {
      if (w == start_) {
        closing = true;
        return edge_mode_ ? path_.size() >= 2 : path_.size() >= 3;
      }
      if (!opts_.start_vertex && w < start_) return false;
    }
    if (!edge_mode_ && used_v_[w]) return false;
    (void)v;
    return true;
  }

  bool charge() {
    if (++expansions_ > opts_.budget) {
      exhausted_ = true;
      return false;
    }
    return true;
  }

  void record_path() {
    Walk w{path_, WalkShape::Path};
    results_.push_back(std::move(w));
  }

  /// Stores the cycle rotated to its lexicographically smallest form, once.
  void record_cycle() {
    std::vector<int> best = path_;
    const std::size_t k = best.size();
    std::vector<int> rot(k);
    for (std::size_t r = 1; r < k; ++r) {
      if (path_[r] > best[0]) continue;
      for (std::size_t i = 0; i < k; ++i) rot[i] = path_[(r + i) % k];
      best = std::min(best, rot);
    }
    if (!seen_cycles_.insert(best).second) return;
    results_.push_back(Walk{std::move(best), WalkShape::Cycle});
  }

  bool closes_exactly() const {
    Walk w{path_, WalkShape::Cycle};
    const Polyline p = curve_of_walk(net_, w);
    return decide_frechet(p, curve_, q_.eps, FrechetVariant{q_.monotonicity, Topology::Closed});
  }

  bool path_end_ok(int w) const { return !opts_.end_vertex || *opts_.end_vertex == w; }

  void dfs_strong(int v, const IntervalSet& reach) {
    const double n = static_cast<double>(index_.segments());
    for (const Neighbor& nb : net_.neighbors(v)) {
      if (stop()) return;
      bool closing = false;
      if (!admissible(v, nb, closing)) continue;
      const int w = nb.vertex;
      if (!charge()) return;
      IntervalSet next = index_.propagate(v, w, reach);
      if (next.empty()) continue;
      if (closing) {
        const IntervalSet tail = next.clipped({n, 2 * n});
        if (!tail.empty()) {
          used_e_[nb.edge] = 1;
          if (closes_exactly()) record_cycle();
          used_e_[nb.edge] = 0;
        }
        if (!edge_mode_) continue;
      }
      enter(w, nb.edge);
      if (!cycle_ && path_end_ok(w) && next.contains(n)) record_path();
      const bool pinned_end = !cycle_ && opts_.end_vertex && *opts_.end_vertex == w && !edge_mode_;
      if (!pinned_end && !stop()) dfs_strong(w, next);
      leave(w, nb.edge);
    }
  }

  void dfs_weak(int v, const WeakState& state) {
    const double n = static_cast<double>(index_.segments());
    for (const Neighbor& nb : net_.neighbors(v)) {
      if (stop()) return;
      bool closing = false;
      if (!admissible(v, nb, closing)) continue;
      const int w = nb.vertex;
      if (!charge()) return;
      WeakState next;
      if (!frontier_.step(v, w, nb.edge, state, next)) continue;
      if (closing) {
        used_e_[nb.edge] = 1;
        if (closes_exactly()) record_cycle();
        used_e_[nb.edge] = 0;
        if (!edge_mode_) continue;
      }
      enter(w, nb.edge);
      if (!cycle_ && path_end_ok(w) && index_.vertex_free(w).contains(n)) {
        const int c = frontier_.component_of(w, n);
        if (next.origin[next.label[c]]) record_path();
      }
      const bool pinned_end = !cycle_ && opts_.end_vertex && *opts_.end_vertex == w && !edge_mode_;
      if (!pinned_end && !stop()) dfs_weak(w, next);
      leave(w, nb.edge);
    }
  }

  void enter(int w, int e) {
    path_.push_back(w);
    used_v_[w] += 1;
    used_e_[e] = 1;
  }
  void leave(int w, int e) {
    path_.pop_back();
    used_v_[w] -= 1;
    used_e_[e] = 0;
  }

  const Network& net_;
  const Polyline& curve_;
  MatchQuery q_;
  const SearchOptions& opts_;
  std::size_t limit_;
  bool cycle_;
  bool weak_;
  bool edge_mode_;
  CurveIndex index_;
  WeakFrontier frontier_;
  std::vector<int> used_v_;
  std::vector<char> used_e_;
  std::vector<char> banned_v_;
  std::vector<char> banned_e_;
  std::vector<int> path_;
  int start_ = -1;
  double target_ = 0;
  int origin_component_ = 0;
  std::vector<int> stamp_;
  std::vector<int> queue_;
  int epoch_ = 0;
  std::unordered_set<std::pair<std::uint64_t, std::uint64_t>, KeyHash> dead_;
  std::uint64_t expansions_ = 0;
  bool exhausted_ = false;
  std::vector<Walk> results_;
  std::set<std::vector<int>> seen_cycles_;
};

void check_query(const Polyline& curve, const MatchQuery& q) {
  check_polyline(curve);
  if (!(q.eps >= 0)) throw InputError("eps must be non-negative");
  if ((q.shape == WalkShape::Cycle) != curve.closed) {
    throw InputError("walk shape does not match curve topology");
  }
}

}  // namespace

MatchResult find_simple_match(const Network& net, const Polyline& curve, const MatchQuery& q,
                              const SearchOptions& opts) {
  check_query(curve, q);
  Searcher s(net, curve, q, opts, 1);
  MatchResult r;
  r.status = s.run();
  r.expansions = s.expansions();
  auto walks = s.take_results();
  if (!walks.empty()) {
    r.status = SearchStatus::Found;
    r.walk = std::move(walks.front());
  }
  return r;
}

EnumerationResult enumerate_simple_matches(const Network& net, const Polyline& curve, const MatchQuery& q,
                                           const SearchOptions& opts, std::size_t limit) {
  check_query(curve, q);
  Searcher s(net, curve, q, opts, limit);
  EnumerationResult r;
  const SearchStatus st = s.run();
  r.walks = s.take_results();
  r.expansions = s.expansions();
  r.status = st == SearchStatus::BudgetExhausted ? st : SearchStatus::Infeasible;
  return r;
}

MinEpsResult min_eps_simple(const Network& net, const Polyline& curve, Simplicity simplicity, WalkShape shape,
                            Monotonicity monotonicity, double tol, std::optional<double> hi,
                            const SearchOptions& opts) {
  if (!(tol > 0)) throw InputError("tolerance must be positive");
  if (!hi) {
    Eigen::AlignedBox2d box;
    for (const auto& p : curve.points) box.extend(p);
    for (const auto& p : net.vertices()) box.extend(p);
    hi = box.diagonal().norm() + tol;
  }
  MatchQuery q{simplicity, shape, monotonicity, *hi};
  MinEpsResult out;
  MatchResult r = find_simple_match(net, curve, q, opts);
  if (r.status != SearchStatus::Found) {
    out.status = r.status;
    out.eps = *hi;
    return out;
  }
  double lo = 0.0, up = *hi;
  out.walk = r.walk;
  while (up - lo > tol) {
    q.eps = 0.5 * (lo + up);
    r = find_simple_match(net, curve, q, opts);
    if (r.status == SearchStatus::BudgetExhausted) {
      out.status = r.status;
      out.eps = up;
      return out;
    }
    if (r.status == SearchStatus::Found) {
      up = q.eps;
      out.walk = r.walk;
    } else {
      lo = q.eps;
    }
  }
  out.status = SearchStatus::Found;
  out.eps = up;
  return out;
}

}  // namespace matchkit
