#ifndef MATCHKIT_SIMPLEMATCH_HPP
#define MATCHKIT_SIMPLEMATCH_HPP

#include "matchkit/frechet.hpp"
#include "matchkit/network.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace matchkit {

struct MatchQuery {
  Simplicity simplicity = Simplicity::Vertex;
  WalkShape shape = WalkShape::Cycle;
  Monotonicity monotonicity = Monotonicity::Strong;
  double eps = 1.0;
};

/// Node-expansion cap used when MATCHKIT_BUDGET is unset.
inline constexpr std::uint64_t kDefaultBudget = 200'000'000;

/// Reads MATCHKIT_BUDGET, falling back to kDefaultBudget.
std::uint64_t default_budget();

struct SearchOptions {
  std::uint64_t budget = default_budget();
  /// Pin the first or last vertex of a path (gate-to-gate enumeration).
  std::optional<int> start_vertex;
  std::optional<int> end_vertex;
  /// Vertices the walk may not use (simulates claimed ports).
  std::vector<int> forbidden_vertices;
  /// Edges the walk may not use.
  std::vector<int> forbidden_edges;
};

enum class SearchStatus { Found, Infeasible, BudgetExhausted };

struct MatchResult {
  SearchStatus status = SearchStatus::Infeasible;
  std::optional<Walk> walk;
  std::uint64_t expansions = 0;
};

/// Depth-first search for a simple walk within q.eps of the curve.
/// Neighbors expand in ascending index order; the first witness found is
/// returned. Cycles start at their smallest vertex.
MatchResult find_simple_match(const Network& net, const Polyline& curve, const MatchQuery& q,
                              const SearchOptions& opts = {});

struct EnumerationResult {
  /// Infeasible here means the enumeration ran to completion.
  SearchStatus status = SearchStatus::Infeasible;
  std::vector<Walk> walks;
  std::uint64_t expansions = 0;
};

/// Every feasible simple walk, up to `limit` of them. A cycle and its
/// reverse are distinct walks.
EnumerationResult enumerate_simple_matches(const Network& net, const Polyline& curve, const MatchQuery& q,
                                           const SearchOptions& opts = {}, std::size_t limit = SIZE_MAX);

struct MinEpsResult {
  SearchStatus status = SearchStatus::Infeasible;
  double eps = 0.0;
  std::optional<Walk> walk;
};

/// Bisection over eps. `hi` defaults to the diameter of all input points,
/// which every simple walk of the requested shape satisfies.
MinEpsResult min_eps_simple(const Network& net, const Polyline& curve, Simplicity simplicity, WalkShape shape,
                            Monotonicity monotonicity, double tol, std::optional<double> hi = std::nullopt,
                            const SearchOptions& opts = {});

}  // namespace matchkit

#endif  // MATCHKIT_SIMPLEMATCH_HPP
