// matchkit command-line tool. Exit status: 0 yes/feasible/agree, 1 no,
// 2 error, 3 search budget exhausted.
#include "matchkit/io.hpp"
#include "matchkit/mapmatch.hpp"
#include "matchkit/satcheck.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace matchkit;

namespace {

enum Exit { kYes = 0, kNo = 1, kError = 2, kBudget = 3 };

std::string num(double x) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

/// Prefixes parse errors with the file they came from.
template <class F>
auto load(const std::string& path, F parse) {
  const std::string text = io::read_file(path);
  try {
    return parse(text);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Polyline load_curve(const std::string& p) { return load(p, io::parse_curve); }
Network load_network(const std::string& p) {
  Network n = load(p, io::parse_network);
  const auto bad = validate(n);
  if (!bad.empty()) throw InputError(p + ": " + bad.front().message);
  return n;
}

const std::map<std::string, WalkShape> kShapes{{"path", WalkShape::Path}, {"cycle", WalkShape::Cycle}};
const std::map<std::string, Simplicity> kSimplicity{{"vertex", Simplicity::Vertex}, {"edge", Simplicity::Edge}};

WalkShape shape_for(const std::string& given, const Polyline& c) {
  if (given.empty()) return c.closed ? WalkShape::Cycle : WalkShape::Path;
  return kShapes.at(given);
}

const char* status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::Infeasible: return "infeasible";
    case SearchStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

int status_exit(SearchStatus s) {
  return s == SearchStatus::Found ? kYes : s == SearchStatus::Infeasible ? kNo : kBudget;
}

std::string walk_text(const Walk& w) {
  std::string s;
  for (int v : w.vertex_ids) s += (s.empty() ? "" : " ") + std::to_string(v);
  return s;
}

// ---------------------------------------------------------------------------

struct FrechetArgs {
  std::string a, b;
  bool weak = false, closed = false, compute = false;
  std::optional<double> eps;
  double tol = kDefaultFrechetTolerance;
};

int run_frechet(const FrechetArgs& o) {
  Polyline a = load_curve(o.a), b = load_curve(o.b);
  if (o.closed) a.closed = b.closed = true;
  const FrechetVariant v{o.weak ? Monotonicity::Weak : Monotonicity::Strong,
                         o.closed || (a.closed && b.closed) ? Topology::Closed : Topology::Open};
  if (o.compute) {
    std::cout << "distance=" << num(compute_frechet(a, b, v, o.tol)) << "\n";
    return kYes;
  }
  if (!o.eps) throw InputError("either --eps or --compute is required");
  const bool ok = decide_frechet(a, b, *o.eps, v);
  std::cout << (ok ? "yes" : "no") << "\n";
  return ok ? kYes : kNo;
}

struct MatchArgs {
  std::string network, curve, shape, simplicity = "vertex", out;
  double eps = 1.0;
  bool weak = false;
  std::optional<std::uint64_t> budget;
  double tol = 1e-6;
  std::optional<double> hi;
};

SearchOptions search_options(const MatchArgs& o) {
  SearchOptions s;
  if (o.budget) s.budget = *o.budget;
  return s;
}

int run_match(const MatchArgs& o) {
  const Network net = load_network(o.network);
  const Polyline c = load_curve(o.curve);
  const bool ok = decide_graph_match(net, c, o.eps, o.weak ? Monotonicity::Weak : Monotonicity::Strong,
                                     shape_for(o.shape, c));
  std::cout << (ok ? "yes" : "no") << "\n";
  return ok ? kYes : kNo;
}

int run_simple_match(const MatchArgs& o) {
  const Network net = load_network(o.network);
  const Polyline c = load_curve(o.curve);
  const MatchQuery q{kSimplicity.at(o.simplicity), shape_for(o.shape, c),
                     o.weak ? Monotonicity::Weak : Monotonicity::Strong, o.eps};
  const MatchResult r = find_simple_match(net, c, q, search_options(o));
  std::cout << "status=" << status_name(r.status) << "\nexpansions=" << r.expansions << "\n";
  if (r.walk) {
    std::cout << "walk=" << walk_text(*r.walk) << "\n";
    if (!o.out.empty()) io::write_file(o.out, io::format_walk(*r.walk));
  }
  return status_exit(r.status);
}

int run_min_eps(const MatchArgs& o) {
  const Network net = load_network(o.network);
  const Polyline c = load_curve(o.curve);
  const MinEpsResult r = min_eps_simple(net, c, kSimplicity.at(o.simplicity), shape_for(o.shape, c),
                                        o.weak ? Monotonicity::Weak : Monotonicity::Strong, o.tol, o.hi,
                                        search_options(o));
  std::cout << "status=" << status_name(r.status) << "\n";
  if (r.status == SearchStatus::Found) std::cout << "eps=" << num(r.eps) << "\n";
  if (r.walk) {
    std::cout << "walk=" << walk_text(*r.walk) << "\n";
    if (!o.out.empty()) io::write_file(o.out, io::format_walk(*r.walk));
  }
  return status_exit(r.status);
}

int run_reduce(const std::string& formula, bool open, const std::string& dir) {
  const EmbeddedFormula f = load(formula, io::parse_formula);
  const Instance inst = reduce(f, open ? Variant::Open : Variant::Closed);
  io::write_instance(dir, inst);
  const auto box = [&] {
    Eigen::AlignedBox2d b;
    for (const Point& p : inst.network.vertices()) b.extend(p);
    return b;
  }();
  std::cout << "vertices=" << inst.network.vertex_count() << "\nedges=" << inst.network.edge_count()
            << "\ncurve_points=" << inst.curve.size() << "\nwidth=" << num(box.sizes().x())
            << "\nheight=" << num(box.sizes().y()) << "\n";
  return kYes;
}

struct VerifyArgs {
  std::vector<std::string> formulas;
  std::string corpus;
  double eps = 1.0;
  bool weak = false, edge = false, open = false;
  std::optional<std::uint64_t> budget;
};

int run_verify(const VerifyArgs& o) {
  std::vector<std::string> files = o.formulas;
  if (!o.corpus.empty()) {
    std::vector<std::string> found;
    for (const auto& e : fs::directory_iterator(o.corpus))
      if (e.path().extension() == ".formula") found.push_back(e.path().string());
    std::sort(found.begin(), found.end());
    files.insert(files.end(), found.begin(), found.end());
  }
  if (files.empty()) throw InputError("no formula given");
  VerifyOptions vo;
  vo.eps = o.eps;
  vo.monotonicity = o.weak ? Monotonicity::Weak : Monotonicity::Strong;
  vo.simplicity = o.edge ? Simplicity::Edge : Simplicity::Vertex;
  vo.variant = o.open ? Variant::Open : Variant::Closed;
  if (o.budget) vo.budget = *o.budget;

  int worst = kYes;
  for (const std::string& file : files) {
    const EmbeddedFormula f = load(file, io::parse_formula);
    const EquivalenceReport r = verify_equivalence(f, vo);
    std::cout << std::boolalpha << "[" << file << "]\n"
              << "sat=" << r.sat << "\ncycle_found=" << r.cycle_found << "\nindeterminate=" << r.indeterminate
              << "\nagree=" << r.agree << "\nwitness_ok=" << r.witness_ok << "\nexpansions=" << r.expansions << "\n";
    if (r.decoded) {
      std::cout << "decoded=";
      for (bool b : r.decoded->values) std::cout << (b ? 'T' : 'F');
      std::cout << "\n";
    }
    for (const std::string& p : r.instance_problems) std::cout << "problem=" << p << "\n";
    std::cout << "passed=" << r.passed() << "\n";
    const int code = r.indeterminate ? kBudget : r.passed() ? kYes : kNo;
    if (code == kNo || (code == kBudget && worst == kYes)) worst = code;
  }
  return worst;
}

// ---------------------------------------------------------------------------
// SVG. The viewBox is exactly the instance bounds with y flipped so that up
// is up.

int run_render(const std::string& dir, const std::string& out) {
  const Instance inst = io::read_instance(dir);
  Eigen::AlignedBox2d box;
  for (const Point& p : inst.network.vertices()) box.extend(p);
  for (const Point& p : inst.curve.points) box.extend(p);
  for (const auto& g : inst.provenance) box.extend(g.box);
  if (box.isEmpty()) throw InputError(dir + ": empty instance");
  const double w = box.sizes().x(), h = box.sizes().y();
  const double stroke = std::max(w, h) / 1000;
  auto pt = [](const Point& p) { return num(p.x()) + "," + num(-p.y()); };

  std::ostringstream s;
  s << R"(<?xml version="1.0" encoding="UTF-8"?>)" << "\n"
    << R"(<svg xmlns="http://www.w3.org/2000/svg" viewBox=")" << num(box.min().x()) << " " << num(-box.max().y())
    << " " << num(w) << " " << num(h) << R"(" width=")" << num(w * 10) << R"(" height=")" << num(h * 10)
    << "\">\n";
  s << R"(<g id="gadgets" fill="none" stroke="#c9a227" stroke-dasharray=")" << num(stroke * 4)
    << R"(" stroke-width=")" << num(stroke) << "\">\n";
  for (const auto& g : inst.provenance) {
    if (g.box.isEmpty()) continue;
    s << R"(<rect data-id=")" << g.id << R"(" x=")" << num(g.box.min().x()) << R"(" y=")" << num(-g.box.max().y())
      << R"(" width=")" << num(g.box.sizes().x()) << R"(" height=")" << num(g.box.sizes().y()) << "\"/>\n";
  }
  s << "</g>\n";
  s << R"(<g id="network" stroke="#555" stroke-width=")" << num(stroke * 2) << "\">\n";
  for (const Edge& e : inst.network.edges()) {
    const Point& a = inst.network.vertex(e.u);
    const Point& b = inst.network.vertex(e.v);
    s << R"(<line x1=")" << num(a.x()) << R"(" y1=")" << num(-a.y()) << R"(" x2=")" << num(b.x())
      << R"(" y2=")" << num(-b.y()) << "\"/>\n";
  }
  s << "</g>\n";
  s << "<g id=\"curve\" fill=\"none\" stroke=\"#d33\" stroke-width=\"" << num(stroke * 2) << "\">\n"
    << (inst.curve.closed ? "<polygon" : "<polyline") << " points=\"";
  for (std::size_t i = 0; i < inst.curve.size(); ++i) s << (i ? " " : "") << pt(inst.curve.points[i]);
  s << "\"/>\n</g>\n</svg>\n";
  io::write_file(out, s.str());
  return kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simple map matching and the planar 3-SAT reduction"};
  app.require_subcommand(1);

  FrechetArgs fa;
  auto* fr = app.add_subcommand("frechet", "Decide or compute the Frechet distance of two curves");
  fr->add_option("a", fa.a)->required();
  fr->add_option("b", fa.b)->required();
  fr->add_flag("--weak", fa.weak);
  fr->add_flag("--closed", fa.closed, "Treat both curves as closed");
  auto* fr_eps = fr->add_option("--eps", fa.eps);
  auto* fr_compute = fr->add_flag("--compute", fa.compute);
  fr->add_option("--tol", fa.tol)->needs(fr_compute);
  fr_eps->excludes(fr_compute);

  MatchArgs ma;
  auto add_match = [&](const char* name, const char* help, bool simple) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("network", ma.network)->required();
    c->add_option("curve", ma.curve)->required();
    c->add_flag("--weak", ma.weak);
    c->add_option("--shape", ma.shape, "Default: cycle for closed curves, path otherwise")
        ->check(CLI::IsMember({"path", "cycle"}));
    if (simple) {
      c->add_option("--simplicity", ma.simplicity)->check(CLI::IsMember({"vertex", "edge"}));
      c->add_option("--budget", ma.budget, "Node-expansion cap (default MATCHKIT_BUDGET or built-in)");
      c->add_option("-o,--output", ma.out, "Write the witness walk here");
    }
    return c;
  };
  auto* mt = add_match("match", "Decide whether any walk (not necessarily simple) matches", false);
  mt->add_option("--eps", ma.eps)->required();
  auto* sm = add_match("simple-match", "Search for a simple walk within eps", true);
  sm->add_option("--eps", ma.eps)->required();
  auto* me = add_match("min-eps", "Smallest eps admitting a simple walk", true);
  me->add_option("--tol", ma.tol);
  me->add_option("--hi", ma.hi, "Upper end of the bisection");

  std::string formula, outdir;
  bool open = false;
  auto* rd = app.add_subcommand("reduce", "Build the instance for an embedded formula");
  rd->add_option("formula", formula)->required();
  rd->add_flag("--open", open, "Drop the closing edge (path variant)");
  rd->add_option("-o,--output", outdir)->required();

  VerifyArgs va;
  auto* vf = app.add_subcommand("verify", "Check satisfiability against the reduced instance");
  vf->add_option("formula", va.formulas);
  vf->add_option("--corpus", va.corpus, "Directory of .formula files");
  vf->add_option("--eps", va.eps);
  vf->add_flag("--weak", va.weak);
  vf->add_flag("--edge", va.edge, "Edge-simple instead of vertex-simple");
  vf->add_flag("--open", va.open, "Open-curve variant with path shape");
  vf->add_option("--budget", va.budget);

  std::string render_dir, render_out;
  auto* rn = app.add_subcommand("render", "Draw an instance as SVG");
  rn->add_option("instance", render_dir)->required();
  rn->add_option("-o,--output", render_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*fr) return run_frechet(fa);
    if (*mt) return run_match(ma);
    if (*sm) return run_simple_match(ma);
    if (*me) return run_min_eps(ma);
    if (*rd) return run_reduce(formula, open, outdir);
    if (*vf) return run_verify(va);
    if (*rn) return run_render(render_dir, render_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
