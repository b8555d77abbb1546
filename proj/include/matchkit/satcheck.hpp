// SAT oracle and the end-to-end check that a formula is satisfiable exactly
// when its reduced instance has a simple matching cycle.
#ifndef MATCHKIT_SATCHECK_HPP
#define MATCHKIT_SATCHECK_HPP

#include "matchkit/reduction.hpp"
#include "matchkit/simplematch.hpp"

#include <optional>
#include <string>
#include <vector>

namespace matchkit {

/// values[i] is variable i+1.
struct Assignment {
  std::vector<bool> values;
};

bool satisfies(const EmbeddedFormula& f, const Assignment& a);

/// Complete DPLL with unit propagation. Empty when f is unsatisfiable.
std::optional<Assignment> solve_sat(const EmbeddedFormula& f);

struct VerifyOptions {
  double eps = 1.0;
  Monotonicity monotonicity = Monotonicity::Strong;
  Simplicity simplicity = Simplicity::Vertex;
  /// Open drops the s'-s closing edge and searches for a path instead.
  Variant variant = Variant::Closed;
  std::uint64_t budget = default_budget();
};

struct EquivalenceReport {
  bool sat = false;
  bool cycle_found = false;
  /// The search ran out of budget; agree is then meaningless.
  bool indeterminate = false;
  bool agree = false;
  std::optional<Walk> witness;
  /// Set when a witness was found: it is simple and within eps of the
  /// curve, and the assignment read off it satisfies the formula.
  bool witness_ok = false;
  std::optional<Assignment> decoded;
  std::vector<std::string> instance_problems;
  std::uint64_t expansions = 0;

  bool passed() const { return !indeterminate && agree && (!cycle_found || witness_ok); }
};

EquivalenceReport verify_equivalence(const EmbeddedFormula& f, const VerifyOptions& opts = {});

}  // namespace matchkit

#endif  // MATCHKIT_SATCHECK_HPP
