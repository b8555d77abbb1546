#include "matchkit/io.hpp"
#include "matchkit/reduction.hpp"
#include "matchkit/satcheck.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <filesystem>

using namespace matchkit;

namespace {

int count_used(const std::vector<bool>& use) {
  int k = 0;
  for (bool b : use) k += b;
  return k;
}

std::vector<bool> only(std::size_t n, std::initializer_list<std::size_t> idx) {
  std::vector<bool> r(n, false);
  for (auto i : idx) r[i] = true;
  return r;
}

std::vector<std::filesystem::path> corpus() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(MATCHKIT_TEST_DATA "/corpus")) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

EmbeddedFormula load(const std::filesystem::path& p) { return io::parse_formula(io::read_file(p)); }

}  // namespace

TEST(Gadgets, WellFormed) {
  const std::vector<Gadget> all = {
      build_block(BlockKind::Horizontal, 1), build_block(BlockKind::Vertical, 2), build_bend(BendKind::Right),
      build_bend(BendKind::Left),           build_chain(7, BlockKind::Vertical, Parity::Even, Alternation::FirstArmUp),
      build_propagation(6),                 build_propagation(5, BendKind::Right, 5),
      build_propagation(7, BendKind::Left, 6), build_variable(2, 1), build_clause()};
  for (const auto& g : all) {
    const auto probs = check_gadget(g);
    EXPECT_TRUE(probs.empty()) << probs.front();
  }
}

TEST(Gadgets, BlocksHaveExactlyTwoPathsOnePortEach) {
  for (BlockKind kind : {BlockKind::Horizontal, BlockKind::Vertical}) {
    for (int span : {1, 2}) {
      const Gadget g = build_block(kind, span);
      const GadgetPaths p = gadget_paths(g, 1.0);
      ASSERT_EQ(p.walks.size(), 2u) << "span " << span;
      EXPECT_EQ(p.uses[0], only(2, {0}));
      EXPECT_EQ(p.uses[1], only(2, {1}));
    }
  }
}

TEST(Gadgets, BlockArmsSitMidSide) {
  const Gadget g = build_block(BlockKind::Horizontal, 2);
  EXPECT_TRUE(g.curve.points.front().isApprox(Point(1, -1)));
  EXPECT_TRUE(g.curve.points.back().isApprox(Point(1, 2)));
}

TEST(Gadgets, ChainBlockTable) {
  // The four chains pictured for the construction, read off as block spans.
  EXPECT_EQ(chain_blocks(6, Parity::Odd), (std::vector<int>{2, 2, 2}));
  EXPECT_EQ(chain_blocks(8, Parity::Odd), (std::vector<int>{2, 1, 1, 2, 2}));
  EXPECT_EQ(chain_blocks(7, Parity::Even), (std::vector<int>{2, 1, 2, 2}));
  EXPECT_EQ(chain_blocks(9, Parity::Even), (std::vector<int>{2, 1, 1, 1, 2, 2}));
  for (int d = 6; d <= 13; ++d) {
    for (Parity par : {Parity::Even, Parity::Odd}) {
      const auto spans = chain_blocks(d, par);
      int total = 0;
      for (int s : spans) total += s;
      EXPECT_EQ(total, d);
      EXPECT_EQ(spans.size() % 2, par == Parity::Odd ? 1u : 0u) << d;
      EXPECT_EQ(spans.front(), 2);
      EXPECT_EQ(spans.back(), 2);
      // At most three 1-blocks, all right after the first block.
      std::size_t ones = 0;
      while (1 + ones < spans.size() && spans[1 + ones] == 1) ++ones;
      EXPECT_LE(ones, 3u);
      for (std::size_t i = 1 + ones; i < spans.size(); ++i) EXPECT_EQ(spans[i], 2);
    }
  }
}

TEST(Gadgets, ChainWithBothEndsPressuredIsStuck) {
  for (int d : {6, 7, 8, 9}) {
    for (Parity par : {Parity::Even, Parity::Odd}) {
      const Gadget g = build_chain(d, BlockKind::Horizontal, par, Alternation::FirstArmUp);
      EXPECT_TRUE(gadget_paths(g, 1.0, {true, true}).walks.empty()) << d;
      for (std::size_t keep : {0u, 1u}) {
        const GadgetPaths p = gadget_paths(g, 1.0, only(2, {1 - keep}));
        ASSERT_FALSE(p.walks.empty());
        for (const auto& u : p.uses) EXPECT_TRUE(u[keep]);
      }
    }
  }
}

TEST(Gadgets, BendPropagatesPressure) {
  for (BendKind k : {BendKind::Right, BendKind::Left}) {
    const Gadget g = build_bend(k);
    EXPECT_TRUE(gadget_paths(g, 1.0, {true, true}).walks.empty());
    for (std::size_t keep : {0u, 1u}) {
      const GadgetPaths p = gadget_paths(g, 1.0, only(2, {1 - keep}));
      ASSERT_EQ(p.walks.size(), 1u);
      EXPECT_EQ(p.uses[0], only(2, {keep}));
    }
    // Besides the two single-port paths there is one that takes both ports.
    const GadgetPaths all = gadget_paths(g, 1.0);
    ASSERT_EQ(all.walks.size(), 3u);
    int both = 0;
    for (const auto& u : all.uses) both += count_used(u) == 2;
    EXPECT_EQ(both, 1);
  }
}

TEST(Gadgets, PropagationGadgetsPassPressureOn) {
  const std::vector<Gadget> props = {build_propagation(6), build_propagation(8), build_propagation(5, BendKind::Right, 5),
                                     build_propagation(5, BendKind::Left, 5), build_propagation(9, BendKind::Right, 8)};
  for (const auto& g : props) {
    ASSERT_EQ(g.ports.size(), 2u);
    EXPECT_TRUE(gadget_paths(g, 1.0, {true, true}).walks.empty());
    for (std::size_t keep : {0u, 1u}) {
      const GadgetPaths p = gadget_paths(g, 1.0, only(2, {1 - keep}));
      ASSERT_FALSE(p.walks.empty());
      for (const auto& u : p.uses) EXPECT_TRUE(u[keep]);
    }
    EXPECT_FALSE(gadget_paths(g, 1.0).walks.empty());
  }
}

TEST(Gadgets, PropagationPortsFollowTheBoundary) {
  const Gadget s = build_propagation(6);
  EXPECT_TRUE(s.ports[0].edge.a.isApprox(Point(2, 0)));
  EXPECT_TRUE(s.ports[1].edge.a.isApprox(Point(2, 6)) || s.ports[1].edge.b.isApprox(Point(2, 6)));
  const Gadget r = build_propagation(5, BendKind::Right, 7);
  const auto& far = r.ports[1].edge;
  EXPECT_NEAR(far.a.x(), 11, 1e-9);
  EXPECT_NEAR(std::min(far.a.y(), far.b.y()), 6, 1e-9);
  const Gadget l = build_propagation(5, BendKind::Left, 7);
  EXPECT_NEAR(l.ports[1].edge.a.x(), -7, 1e-9);
}

TEST(Gadgets, VariableHasTwoConsistentStates) {
  for (int k : {1, 2}) {
    const Gadget g = build_variable(k, k);
    const GadgetPaths p = gadget_paths(g, 1.0);
    ASSERT_EQ(p.walks.size(), 2u) << k;
    for (const auto& u : p.uses) {
      // A state claims every T port and no F port, or the other way round.
      bool t = false, f = false;
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (!u[i]) continue;
        (g.ports[i].role == PortRole::TPort ? t : f) = true;
      }
      EXPECT_NE(t, f);
      EXPECT_EQ(count_used(u), 2 * k);
    }
  }
}

TEST(Gadgets, ClauseNeedsAFreePort) {
  const Gadget g = build_clause();
  ASSERT_EQ(g.ports.size(), 3u);
  for (const auto& u : gadget_paths(g, 1.0).uses) EXPECT_GE(count_used(u), 1);
  for (std::size_t free_port = 0; free_port < 3; ++free_port) {
    std::vector<bool> rm(3, true);
    rm[free_port] = false;
    EXPECT_FALSE(gadget_paths(g, 1.0, rm).walks.empty()) << free_port;
  }
  EXPECT_TRUE(gadget_paths(g, 1.0, {true, true, true}).walks.empty());
}

TEST(Gadgets, ShortPropagationRejected) {
  EXPECT_THROW(build_propagation(5), InputError);
  EXPECT_THROW(build_propagation(4, BendKind::Right, 6), InputError);
}

TEST(Formula, ValidationRejectsBadLayouts) {
  EmbeddedFormula f{2, {{{1, 3, 2}, Side::Above}}};
  EXPECT_THROW(validate_formula(f), InputError);  // out of range
  f = EmbeddedFormula{3, {{{2, 1, 3}, Side::Above}}};
  EXPECT_THROW(validate_formula(f), InputError);  // not left-to-right
  f = EmbeddedFormula{4, {{{1, 2, 3}, Side::Above}, {{2, 3, 4}, Side::Above}}};
  EXPECT_THROW(validate_formula(f), InputError);  // crossing spans
  f = EmbeddedFormula{4, {{{1, 2, 3}, Side::Above}, {{2, 3, 4}, Side::Below}}};
  EXPECT_NO_THROW(validate_formula(f));  // opposite sides never meet
  f = EmbeddedFormula{3, {{{1, 2, 3}, Side::Above}, {{1, 2, 3}, Side::Below}}};
  EXPECT_NO_THROW(validate_formula(f));
}

TEST(Formula, DominanceCountsNestedClauses) {
  const EmbeddedFormula f{3, {{{1, 2, 3}, Side::Above}, {{-1, -1, -2}, Side::Above}, {{1, 2, 3}, Side::Below}}};
  EXPECT_EQ(compute_dominance(f), (std::vector<int>{1, 0, 0}));
}

TEST(Formula, SlotsNumberLegsLeftToRight) {
  const EmbeddedFormula f{2, {{{1, 1, 2}, Side::Above}}};
  const auto slots = assign_slots(f);
  ASSERT_EQ(slots.size(), 3u);
  ASSERT_EQ(slots[1].size(), 2u);
  EXPECT_EQ(slots[1][0].position, 0);
  EXPECT_EQ(slots[1][0].slot, 0);
  EXPECT_EQ(slots[1][1].position, 1);
  EXPECT_EQ(slots[1][1].slot, 1);
  ASSERT_EQ(slots[2].size(), 1u);
  EXPECT_EQ(slots[2][0].slot, 0);
}

TEST(Reduction, OneClauseInstanceShape) {
  const Instance inst = reduce(EmbeddedFormula{3, {{{1, 2, 3}, Side::Above}}});
  EXPECT_TRUE(inst.curve.closed);
  EXPECT_TRUE(is_simple(inst.curve));
  int vars = 0, clauses = 0, props = 0;
  for (const auto& g : inst.provenance) {
    vars += g.id.rfind("var", 0) == 0;
    clauses += g.id.rfind("clause", 0) == 0;
    props += g.id.rfind("prop", 0) == 0;
  }
  EXPECT_EQ(vars, 3);
  EXPECT_EQ(clauses, 1);
  EXPECT_EQ(props, 3);
  EXPECT_NE(inst.find("var2"), nullptr);
  EXPECT_EQ(inst.find("nope"), nullptr);
}

TEST(Reduction, CorpusInstancesValidateAndFitTheBounds) {
  for (const auto& path : corpus()) {
    const EmbeddedFormula f = load(path);
    const auto t0 = std::chrono::steady_clock::now();
    const Instance inst = reduce(f);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_LT(secs, 1.0);
    const auto probs = validate_instance(inst);
    EXPECT_TRUE(probs.empty()) << path << ": " << probs.front();
    Eigen::AlignedBox2d box;
    for (const auto& p : inst.network.vertices()) box.extend(p);
    const double n = f.num_vars, m = static_cast<double>(f.clauses.size());
    // Width per variable grows with its occurrences on the busier side; with
    // distinct variables per clause that is at most m.
    std::vector<int> above(f.num_vars + 1, 0), below(f.num_vars + 1, 0);
    bool distinct = true;
    for (const auto& c : f.clauses) {
      for (int k = 0; k < 3; ++k) ++(c.side == Side::Above ? above : below)[std::abs(c.literals[k])];
      const int a = std::abs(c.literals[0]), b = std::abs(c.literals[1]), d = std::abs(c.literals[2]);
      distinct = distinct && a != b && b != d && a != d;
    }
    double width = 6;
    for (int v = 1; v <= f.num_vars; ++v) width += 7 + 11 * std::max({above[v], below[v], 1});
    EXPECT_LE(box.sizes().x(), width) << path;
    if (distinct) EXPECT_LE(box.sizes().x(), 6 + n * (7 + 11 * m)) << path;
    EXPECT_LE(box.sizes().y(), 16 + 2 * (14 * m + 14)) << path;
  }
}

TEST(Reduction, OpenVariantDropsTheClosingEdge) {
  const EmbeddedFormula f{3, {{{1, 2, 3}, Side::Above}}};
  const Instance closed = reduce(f, Variant::Closed);
  const Instance open = reduce(f, Variant::Open);
  EXPECT_FALSE(open.curve.closed);
  EXPECT_TRUE(is_simple(open.curve));
  EXPECT_TRUE(validate_instance(open).empty());
  EXPECT_EQ(open.network.edge_count() + 1, closed.network.edge_count());
}

TEST(Reduction, OverlappingGadgetsAreReported) {
  Instance inst = reduce(EmbeddedFormula{3, {{{1, 2, 3}, Side::Above}}});
  GadgetRecord* a = nullptr;
  GadgetRecord* b = nullptr;
  for (auto& g : inst.provenance) {
    if (g.id == "var1") a = &g;
    if (g.id == "var2") b = &g;
  }
  ASSERT_TRUE(a && b);
  b->boundary = a->boundary;
  const auto probs = validate_instance(inst);
  ASSERT_FALSE(probs.empty());
  bool found = false;
  for (const auto& p : probs) found = found || p.find("intrudes") != std::string::npos;
  EXPECT_TRUE(found);
}

TEST(Reduction, MarkersPointAtTines) {
  const Instance inst = reduce(EmbeddedFormula{2, {{{1, 1, 2}, Side::Above}}});
  ASSERT_EQ(inst.t_marker.size(), 2u);
  for (std::size_t v = 0; v < 2; ++v) {
    ASSERT_GE(inst.t_marker[v], 0);
    ASSERT_GE(inst.f_marker[v], 0);
    const GadgetRecord* g = inst.find("var" + std::to_string(v + 1));
    ASSERT_NE(g, nullptr);
    EXPECT_NE(std::find(g->edges.begin(), g->edges.end(), inst.t_marker[v]), g->edges.end());
  }
}

TEST(Gadgets, BlockNeedsUnitEps) {
  EXPECT_TRUE(gadget_paths(build_block(BlockKind::Horizontal, 2), 0.5).walks.empty());
}

TEST(Gadgets, BendLosesItsGripAtLargerEps) {
  const GadgetPaths p = gadget_paths(build_bend(BendKind::Right), 1.5);
  bool neither = false;
  for (const auto& u : p.uses) neither = neither || count_used(u) == 0;
  EXPECT_TRUE(neither);
}

TEST(Gadgets, VariableBoxAndPortPressure) {
  const Gadget g = build_variable(1, 1);
  const auto box = g.bounds();
  EXPECT_NEAR(box.sizes().x(), 15, 1e-9);
  EXPECT_NEAR(box.sizes().y(), 16, 1e-9);
  for (std::size_t i = 0; i < g.ports.size(); ++i) {
    if (g.ports[i].role != PortRole::TPort) continue;
    std::vector<bool> rm(g.ports.size(), false);
    rm[i] = true;
    const GadgetPaths p = gadget_paths(g, 1.0, rm);
    ASSERT_EQ(p.walks.size(), 1u);
    for (std::size_t j = 0; j < g.ports.size(); ++j) {
      EXPECT_EQ(p.uses[0][j], g.ports[j].role == PortRole::FPort);
    }
  }
}

TEST(Gadgets, ClauseHasSeveralChoices) { EXPECT_GE(gadget_paths(build_clause(), 1.0).walks.size(), 3u); }
