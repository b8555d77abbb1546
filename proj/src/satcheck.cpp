#include "matchkit/satcheck.hpp"

#include <cstdlib>
#include <functional>

namespace matchkit {

namespace {

bool literal_true(int lit, const std::vector<signed char>& val) {
  const signed char v = val[std::abs(lit) - 1];
  return lit > 0 ? v == 1 : v == 0;
}

bool literal_false(int lit, const std::vector<signed char>& val) {
  const signed char v = val[std::abs(lit) - 1];
  return lit > 0 ? v == 0 : v == 1;
}

}  // namespace

bool satisfies(const EmbeddedFormula& f, const Assignment& a) {
  if (static_cast<int>(a.values.size()) != f.num_vars) return false;
  for (const auto& c : f.clauses) {
    bool ok = false;
    for (int lit : c.literals) ok = ok || (a.values[std::abs(lit) - 1] == (lit > 0));
    if (!ok) return false;
  }
  return true;
}

std::optional<Assignment> solve_sat(const EmbeddedFormula& f) {
  validate_formula(f);
  // -1 unassigned, 0 false, 1 true.
  std::vector<signed char> val(f.num_vars, -1);

  // Unit propagation to a fixpoint; false on conflict.
  auto propagate = [&](std::vector<int>& trail) {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& c : f.clauses) {
        int open = 0, unit = 0;
        bool sat = false;
        for (int lit : c.literals) {
          if (literal_true(lit, val)) sat = true;
          else if (!literal_false(lit, val) && unit != lit) {
            ++open;
            unit = lit;
          }
        }
        if (sat) continue;
        if (open == 0) return false;
        if (open == 1) {
          val[std::abs(unit) - 1] = unit > 0 ? 1 : 0;
          trail.push_back(std::abs(unit) - 1);
          changed = true;
        }
      }
    }
    return true;
  };

  std::function<bool()> search = [&]() {
    std::vector<int> trail;
    if (!propagate(trail)) {
      for (int v : trail) val[v] = -1;
      return false;
    }
    int pick = -1;
    for (int v = 0; v < f.num_vars && pick < 0; ++v) {
      if (val[v] < 0) pick = v;
    }
    if (pick < 0) return true;
    for (signed char b : {1, 0}) {
      val[pick] = b;
      if (search()) return true;
    }
    val[pick] = -1;
    for (int v : trail) val[v] = -1;
    return false;
  };

  if (!search()) return std::nullopt;
  Assignment a;
  for (signed char v : val) a.values.push_back(v != 0);  // unconstrained -> true
  return a;
}

EquivalenceReport verify_equivalence(const EmbeddedFormula& f, const VerifyOptions& opts) {
  EquivalenceReport r;
  r.sat = solve_sat(f).has_value();
  const Instance inst = reduce(f, opts.variant);
  r.instance_problems = validate_instance(inst);

  const WalkShape shape = opts.variant == Variant::Closed ? WalkShape::Cycle : WalkShape::Path;
  const MatchQuery q{opts.simplicity, shape, opts.monotonicity, opts.eps};
  SearchOptions so;
  so.budget = opts.budget;
  const MatchResult m = find_simple_match(inst.network, inst.curve, q, so);
  r.expansions = m.expansions;
  if (m.status == SearchStatus::BudgetExhausted) {
    r.indeterminate = true;
    return r;
  }
  r.cycle_found = m.status == SearchStatus::Found;
  r.agree = r.sat == r.cycle_found;
  if (!r.cycle_found) return r;

  r.witness = m.walk;
  const Topology top = shape == WalkShape::Cycle ? Topology::Closed : Topology::Open;
  const bool close = decide_frechet(curve_of_walk(inst.network, *m.walk), inst.curve, opts.eps,
                                    FrechetVariant{opts.monotonicity, top});
  const bool simple = is_simple_walk(inst.network, *m.walk, opts.simplicity);
  Assignment a{decode_assignment(inst, *m.walk)};
  r.witness_ok = close && simple && satisfies(f, a);
  r.decoded = std::move(a);
  return r;
}

}  // namespace matchkit
