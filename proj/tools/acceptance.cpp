// Runs the acceptance criteria and prints one PASS/FAIL line for each,
// with indented detail lines underneath. Exit status is the number of
// failing criteria.
#include "matchkit/io.hpp"
#include "matchkit/satcheck.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace matchkit;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

template <class... A>
void info(const char* fmt, A... a) {
  std::printf("    ");
  if constexpr (sizeof...(a) == 0) {
    std::fputs(fmt, stdout);
  } else {
    std::printf(fmt, a...);
  }
  std::printf("\n");
}

int failures = 0;

void verdict(int n, bool ok, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", n, what.c_str());
  std::fflush(stdout);
  failures += !ok;
}

struct CorpusEntry {
  std::string name;
  EmbeddedFormula f;
};

std::vector<CorpusEntry> load_corpus() {
  std::vector<CorpusEntry> out;
  for (const auto& e : fs::directory_iterator(std::string(MATCHKIT_TEST_DATA) + "/corpus"))
    if (e.path().extension() == ".formula")
      out.push_back({e.path().stem().string(), io::parse_formula(io::read_file(e.path()))});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

// ---------------------------------------------------------------------------

void gadget_enumeration() {
  bool ok = true;
  double slowest = 0;
  auto timed = [&](const Gadget& g, const std::vector<bool>& removed = {}) {
    const auto t0 = Clock::now();
    GadgetPaths p = gadget_paths(g, 1.0, removed);
    slowest = std::max(slowest, seconds_since(t0));
    ok = ok && p.status != SearchStatus::BudgetExhausted;
    return p;
  };
  auto expect_two = [&](const char* name, const Gadget& g) {
    const std::size_t n = timed(g).walks.size();
    info("%-22s %zu paths%s", name, n, n == 2 ? "" : "  (expected 2)");
    ok = ok && n == 2;
  };
  expect_two("horizontal 1-block", build_block(BlockKind::Horizontal, 1));
  expect_two("horizontal 2-block", build_block(BlockKind::Horizontal, 2));
  expect_two("vertical 1-block", build_block(BlockKind::Vertical, 1));
  expect_two("vertical 2-block", build_block(BlockKind::Vertical, 2));
  expect_two("right bend", build_bend(BendKind::Right));
  expect_two("left bend", build_bend(BendKind::Left));
  expect_two("variable k=1", build_variable(1, 1));
  expect_two("variable k=2", build_variable(2, 2));

  const Gadget clause = build_clause();
  const GadgetPaths all = timed(clause);
  bool pressured = true;
  for (const auto& u : all.uses) pressured = pressured && std::count(u.begin(), u.end(), true) >= 1;
  bool each_free = true;
  for (std::size_t p = 0; p < clause.ports.size(); ++p) {
    std::vector<bool> rm(clause.ports.size(), true);
    rm[p] = false;
    each_free = each_free && !timed(clause, rm).walks.empty();
  }
  info("clause                 %zu paths, all pressure a port: %s, each lone port admits a path: %s",
       all.walks.size(), pressured ? "yes" : "no", each_free ? "yes" : "no");
  ok = ok && pressured && each_free && slowest < 10;
  info("slowest enumeration %.3f s (limit 10 s)", slowest);
  verdict(1, ok, "gadget enumeration");
}

// ---------------------------------------------------------------------------

struct VariantRun {
  const char* name;
  VerifyOptions opts;
};

/// Per formula, whether a matching cycle/path was found; -1 when undecided.
std::vector<int> run_corpus(const std::vector<CorpusEntry>& corpus, const VerifyOptions& opts, bool& all_pass,
                            double& secs) {
  std::vector<int> found;
  all_pass = true;
  const auto t0 = Clock::now();
  for (const auto& c : corpus) {
    const auto t1 = Clock::now();
    const EquivalenceReport r = verify_equivalence(c.f, opts);
    info("%-30s sat=%d found=%d agree=%d witness_ok=%d %s %.2f s", c.name.c_str(), r.sat, r.cycle_found, r.agree,
         r.witness_ok, r.indeterminate ? "BUDGET" : "", seconds_since(t1));
    all_pass = all_pass && r.passed() && r.instance_problems.empty();
    found.push_back(r.indeterminate ? -1 : r.cycle_found);
  }
  secs = seconds_since(t0);
  return found;
}

std::vector<int> corpus_equivalence(const std::vector<CorpusEntry>& corpus) {
  int sat = 0, above = 0, below = 0;
  for (const auto& c : corpus) {
    sat += solve_sat(c.f).has_value();
    for (const auto& cl : c.f.clauses) (cl.side == Side::Above ? above : below)++;
  }
  bool pass;
  double secs;
  const auto found = run_corpus(corpus, {}, pass, secs);
  info("%zu formulas, %d satisfiable, %d clauses above and %d below; %.1f s (limit 600 s)", corpus.size(), sat,
       above, below, secs);
  verdict(2, pass && corpus.size() >= 10 && sat > 0 && sat < static_cast<int>(corpus.size()) && above > 0 &&
                 below > 0 && secs <= 600,
          "corpus equivalence");
  return found;
}

// ---------------------------------------------------------------------------

void inapproximability(const std::vector<CorpusEntry>& corpus) {
  bool ok = true;
  const auto t0 = Clock::now();
  struct Case {
    const char* name;
    Gadget g;
  };
  for (const Case& c : {Case{"straight k=6", build_propagation(6)}, Case{"straight k=8", build_propagation(8)},
                        Case{"right bend 5/5", build_propagation(5, BendKind::Right, 5)}}) {
    NetworkBuilder b;
    for (const Segment& s : c.g.network) b.add_segment(s.a, s.b);
    const Network net = b.build();
    SearchOptions o;
    o.start_vertex = b.find_vertex(c.g.gates[0]);
    o.end_vertex = b.find_vertex(c.g.gates[1]);
    for (const Port& p : c.g.ports)
      o.forbidden_edges.push_back(net.edge_between(b.find_vertex(p.edge.a), b.find_vertex(p.edge.b)));
    const MinEpsResult r =
        min_eps_simple(net, c.g.curve, Simplicity::Vertex, WalkShape::Path, Monotonicity::Strong, 1e-6, {}, o);
    const bool good = r.status == SearchStatus::Infeasible ||
                      (r.status == SearchStatus::Found && r.eps >= std::sqrt(2.0) - 1e-3);
    info("%-16s ports removed: min eps %s", c.name,
         r.status == SearchStatus::Found           ? std::to_string(r.eps).c_str()
         : r.status == SearchStatus::Infeasible ? "none (no path at any eps)"
                                                : "BUDGET");
    ok = ok && good;
  }
  const auto it = std::find_if(corpus.begin(), corpus.end(), [](const auto& c) { return !solve_sat(c.f); });
  if (it == corpus.end()) {
    info("no unsatisfiable corpus formula");
    ok = false;
  } else {
    const Instance inst = reduce(it->f);
    for (double eps : {1.0, 1.05, 1.1, 1.3}) {
      const MatchQuery q{Simplicity::Vertex, WalkShape::Cycle, Monotonicity::Strong, eps};
      const MatchResult r = find_simple_match(inst.network, inst.curve, q);
      info("%s at eps %.2f: %s (%llu expansions)", it->name.c_str(), eps,
           r.status == SearchStatus::Infeasible ? "infeasible"
           : r.status == SearchStatus::Found    ? "FOUND"
                                                : "BUDGET",
           static_cast<unsigned long long>(r.expansions));
      ok = ok && r.status == SearchStatus::Infeasible;
    }
  }
  const double secs = seconds_since(t0);
  info("%.1f s (limit 1800 s)", secs);
  verdict(3, ok && secs <= 1800, "inapproximability gap");
}

// ---------------------------------------------------------------------------

void variants(const std::vector<CorpusEntry>& corpus, const std::vector<int>& strong) {
  VariantRun runs[3] = {{"weak", {}}, {"edge-simple", {}}, {"open curve", {}}};
  runs[0].opts.monotonicity = Monotonicity::Weak;
  runs[1].opts.simplicity = Simplicity::Edge;
  runs[2].opts.variant = Variant::Open;
  bool ok = true;
  for (auto& v : runs) {
    info("-- %s", v.name);
    bool pass;
    double secs;
    const auto found = run_corpus(corpus, v.opts, pass, secs);
    const bool same = found == strong;
    info("%s: all agree %s, outcomes match strong %s, %.1f s", v.name, pass ? "yes" : "no", same ? "yes" : "no", secs);
    ok = ok && pass && same;
  }
  verdict(4, ok, "weak, edge-simple and open variants");
}

// ---------------------------------------------------------------------------

Polyline reversed(Polyline c) {
  std::reverse(c.points.begin(), c.points.end());
  return c;
}

void frechet_properties() {
  constexpr double tol = 1e-9;
  std::mt19937 rng(2024);
  int violations = 0, pairs = 0, oracle_checks = 0, oracle_bad = 0;
  std::string first;
  auto check = [&](bool cond, const char* what) {
    if (!cond && violations++ == 0) first = what;
  };
  const auto t0 = Clock::now();
  for (int it = 0; it < 1000; ++it, ++pairs) {
    const bool closed = it % 4 == 3;
    const Topology top = closed ? Topology::Closed : Topology::Open;
    const FrechetVariant strong{Monotonicity::Strong, top}, weak{Monotonicity::Weak, top};
    const Polyline a = oracle::random_polyline(rng, 2, closed ? 5 : 6, closed);
    const Polyline b = oracle::random_polyline(rng, 2, closed ? 5 : 6, closed);
    const Polyline c = oracle::random_polyline(rng, 2, closed ? 5 : 6, closed);
    const double ab = compute_frechet(a, b, strong, tol), ba = compute_frechet(b, a, strong, tol);
    const double wab = compute_frechet(a, b, weak, tol);
    check(std::abs(ab - ba) <= 2 * tol, "symmetry");
    check(wab <= ab + 2 * tol, "weak <= strong");
    check(decide_frechet(a, a, tol, strong) && decide_frechet(a, a, tol, weak), "identity");
    check(decide_frechet(a, b, ab, strong), "decide at computed value");
    check(ab < 2 * tol || !decide_frechet(a, b, ab - 2 * tol, strong), "decide just below computed value");
    check(decide_frechet(a, b, wab, weak), "weak decide at computed value");
    check(wab < 2 * tol || !decide_frechet(a, b, wab - 2 * tol, weak), "weak decide just below");
    check(decide_frechet(a, b, ab + 0.25, strong) && decide_frechet(a, b, ab * 2 + tol, strong), "monotone in eps");
    const double ac = compute_frechet(a, c, strong, tol), bc = compute_frechet(b, c, strong, tol);
    check(ac <= ab + bc + 3 * tol, "triangle inequality");
    check(std::abs(compute_frechet(reversed(a), reversed(b), strong, tol) - ab) <= 2 * tol, "reversal");
    if (!closed) {
      const double ends = std::max((a.points.front() - b.points.front()).norm(),
                                   (a.points.back() - b.points.back()).norm());
      check(ab >= ends - tol, "endpoint lower bound");
    }
    // Discrete oracle on dense resamplings, every fifth pair.
    if (it % 5 == 0) {
      const double h = closed ? 0.05 : 0.02;
      const auto sa = oracle::sample(a, h), sb = oracle::sample(b, h);
      const double dd = closed ? oracle::discrete_frechet_closed(sa, sb) : oracle::discrete_frechet(sa, sb);
      ++oracle_checks;
      oracle_bad += !(ab <= dd + 2 * tol && ab >= dd - 2 * h);
    }
  }
  info("%d pairs (3/4 open, 1/4 closed), %d property violations%s%s", pairs, violations,
       violations ? ", first: " : "", first.c_str());
  info("discrete oracle: %d comparisons, %d outside 2h", oracle_checks, oracle_bad);
  info("%.1f s", seconds_since(t0));
  verdict(5, violations == 0 && oracle_bad == 0 && pairs >= 1000, "Frechet engine properties");
}

// ---------------------------------------------------------------------------

void size_bounds(const std::vector<CorpusEntry>& corpus) {
  bool width_ok = true, height_ok = true, time_ok = true, occ_ok = true;
  for (const auto& c : corpus) {
    const auto t0 = Clock::now();
    const Instance inst = reduce(c.f);
    const double secs = seconds_since(t0);
    Eigen::AlignedBox2d box;
    for (const Point& p : inst.network.vertices()) box.extend(p);
    for (const Point& p : inst.curve.points) box.extend(p);
    const double n = c.f.num_vars, m = static_cast<double>(c.f.clauses.size());
    const double wmax = 6 + n * (7 + 11 * m), hmax = 16 + 2 * (14 * m + 14);
    std::vector<int> above(c.f.num_vars + 1, 0), below(c.f.num_vars + 1, 0);
    for (const auto& cl : c.f.clauses)
      for (int lit : cl.literals) ++(cl.side == Side::Above ? above : below)[std::abs(lit)];
    double wocc = 6;
    for (int v = 1; v <= c.f.num_vars; ++v) wocc += 7 + 11 * std::max({above[v], below[v], 1});
    const double w = box.sizes().x(), h = box.sizes().y();
    info("%-30s width %4.0f / %4.0f%s  height %3.0f / %3.0f%s  occurrence width bound %4.0f  reduce %.3f s",
         c.name.c_str(), w, wmax, w <= wmax ? "" : " OVER", h, hmax, h <= hmax ? "" : " OVER", wocc, secs);
    width_ok = width_ok && w <= wmax;
    height_ok = height_ok && h <= hmax;
    occ_ok = occ_ok && w <= wocc;
    time_ok = time_ok && secs < 1;
  }
  info("width bound %s, height bound %s, occurrence width bound %s, reduce under 1 s %s", width_ok ? "holds" : "FAILS",
       height_ok ? "holds" : "FAILS", occ_ok ? "holds" : "FAILS", time_ok ? "yes" : "no");
  if (!width_ok) info("the width bound assumes at most m occurrences of a variable per side");
  verdict(6, width_ok && height_ok && time_ok, "size bounds and reduction time");
}

// ---------------------------------------------------------------------------

void solver_completeness() {
  std::mt19937 rng(77);
  const std::pair<int, int> grids[] = {{3, 3}, {3, 4}, {4, 3}, {2, 5}, {2, 6}, {2, 7}};
  std::uniform_real_distribution<double> eps(0.15, 0.6);
  int disagreements = 0, found = 0, trials = 0;
  int max_vertices = 0;
  const auto t0 = Clock::now();
  for (int t = 0; t < 200; ++t, ++trials) {
    const auto [rows, cols] = grids[t % 6];
    const Network net = oracle::random_grid_network(rng, rows, cols, 0.75);
    max_vertices = std::max(max_vertices, static_cast<int>(net.vertex_count()));
    const WalkShape shape = (t / 6) % 2 ? WalkShape::Cycle : WalkShape::Path;
    const Simplicity simp = (t / 12) % 2 ? Simplicity::Edge : Simplicity::Vertex;
    const Monotonicity mono = (t / 24) % 2 ? Monotonicity::Weak : Monotonicity::Strong;
    const Polyline curve = oracle::curve_near_network(rng, net, shape == WalkShape::Cycle, 0.25);
    const MatchQuery q{simp, shape, mono, eps(rng)};
    const FrechetVariant v{mono, curve.closed ? Topology::Closed : Topology::Open};
    bool want = false;
    for (const Walk& w : oracle::all_simple_walks(net, shape, simp)) {
      if (decide_frechet(curve_of_walk(net, w), curve, q.eps, v)) {
        want = true;
        break;
      }
    }
    const MatchResult r = find_simple_match(net, curve, q);
    bool got = r.status == SearchStatus::Found;
    if (got) got = is_simple_walk(net, *r.walk, simp) && decide_frechet(curve_of_walk(net, *r.walk), curve, q.eps, v);
    const bool agree = r.status != SearchStatus::BudgetExhausted && got == want;
    if (!agree) info("disagreement on trial %d (oracle %d, solver status %d)", t, want, static_cast<int>(r.status));
    disagreements += !agree;
    found += want;
  }
  info("%d networks up to %d vertices, %d with a match, %d disagreements, %.1f s", trials, max_vertices, found,
       disagreements, seconds_since(t0));
  verdict(7, disagreements == 0 && trials >= 200 && max_vertices <= 14, "small-instance solver completeness");
}

}  // namespace

int main() {
  const auto corpus = load_corpus();
  const auto t0 = Clock::now();
  gadget_enumeration();
  const auto strong = corpus_equivalence(corpus);
  inapproximability(corpus);
  variants(corpus, strong);
  frechet_properties();
  size_bounds(corpus);
  solver_completeness();
  std::printf("%d of 7 criteria failed, %.1f s total\n", failures, seconds_since(t0));
  return failures;
}
