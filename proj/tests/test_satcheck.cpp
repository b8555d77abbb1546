#include "matchkit/io.hpp"
#include "matchkit/satcheck.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

using namespace matchkit;

namespace {

/// Tries every assignment.
bool brute_force_sat(const EmbeddedFormula& f) {
  for (unsigned mask = 0; mask < (1u << f.num_vars); ++mask) {
    Assignment a;
    for (int v = 0; v < f.num_vars; ++v) a.values.push_back(mask >> v & 1);
    if (satisfies(f, a)) return true;
  }
  return false;
}

EmbeddedFormula corpus_formula(const std::string& name) {
  return io::parse_formula(io::read_file(std::string(MATCHKIT_TEST_DATA "/corpus/") + name + ".formula"));
}

}  // namespace

TEST(SolveSat, SmallExamples) {
  const EmbeddedFormula one{3, {{{1, 2, 3}, Side::Above}}};
  const auto a = solve_sat(one);
  ASSERT_TRUE(a);
  EXPECT_TRUE(satisfies(one, *a));
  EXPECT_FALSE(solve_sat(EmbeddedFormula{1, {{{1, 1, 1}, Side::Above}, {{-1, -1, -1}, Side::Below}}}));
  EXPECT_TRUE(solve_sat(EmbeddedFormula{2, {{{1, -2, 2}, Side::Above}}}));
}

TEST(SolveSat, AgreesWithBruteForce) {
  // Clauses over consecutive variables on alternating sides never nest.
  std::mt19937 rng(11);
  for (int iter = 0; iter < 300; ++iter) {
    const int n = 3 + iter % 4;
    EmbeddedFormula f{n, {}};
    std::uniform_int_distribution<int> sign(0, 1);
    for (int start = 1; start + 2 <= n; ++start) {
      ClauseRecord c{};
      for (int k = 0; k < 3; ++k) c.literals[k] = (start + k) * (sign(rng) ? 1 : -1);
      c.side = (start % 2) ? Side::Above : Side::Below;
      f.clauses.push_back(c);
    }
    for (int v = 1; v <= n; ++v) {
      const int l = v * (sign(rng) ? 1 : -1);
      f.clauses.push_back({{l, l, l}, v % 2 ? Side::Below : Side::Above});
      if (sign(rng)) break;
    }
    try {
      validate_formula(f);
    } catch (const InputError&) {
      continue;
    }
    const auto a = solve_sat(f);
    EXPECT_EQ(a.has_value(), brute_force_sat(f));
    if (a) {
      EXPECT_TRUE(satisfies(f, *a));
    }
  }
}

TEST(VerifyEquivalence, SatisfiableFormulaDecodes) {
  const auto r = verify_equivalence(corpus_formula("sat_one_clause_above"));
  EXPECT_TRUE(r.sat);
  EXPECT_TRUE(r.cycle_found);
  EXPECT_TRUE(r.agree);
  EXPECT_TRUE(r.witness_ok);
  EXPECT_TRUE(r.instance_problems.empty());
  ASSERT_TRUE(r.decoded);
  EXPECT_EQ(r.decoded->values.size(), 3u);
}

TEST(VerifyEquivalence, UnsatisfiableFormulaHasNoCycle) {
  const auto r = verify_equivalence(corpus_formula("unsat_opposite_sides"));
  EXPECT_FALSE(r.sat);
  EXPECT_FALSE(r.cycle_found);
  EXPECT_TRUE(r.agree);
  EXPECT_TRUE(r.passed());
}

TEST(VerifyEquivalence, BudgetExhaustionIsIndeterminate) {
  VerifyOptions o;
  o.budget = 10;
  const auto r = verify_equivalence(corpus_formula("unsat_opposite_sides"), o);
  EXPECT_TRUE(r.indeterminate);
  EXPECT_FALSE(r.passed());
}

TEST(VerifyEquivalence, VariantsAgreeOnCorpus) {
  for (const char* name : {"sat_both_sides", "unsat_second_of_two"}) {
    const EmbeddedFormula f = corpus_formula(name);
    for (int variant = 0; variant < 3; ++variant) {
      VerifyOptions o;
      if (variant == 0) o.monotonicity = Monotonicity::Weak;
      if (variant == 1) o.simplicity = Simplicity::Edge;
      if (variant == 2) o.variant = Variant::Open;
      const auto r = verify_equivalence(f, o);
      EXPECT_TRUE(r.passed()) << name << " variant " << variant;
    }
  }
}
