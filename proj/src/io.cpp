#include "matchkit/io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace matchkit::io {

using nlohmann::json;

namespace {

json number(double x) {
  if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9.0e15) return json(static_cast<std::int64_t>(x));
  return json(x);
}

json point(const Point& p) { return json::array({number(p.x()), number(p.y())}); }

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw InputError("field '" + field + "': " + what);
}

json parse(const std::string& text, const char* format) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(e.what());
  }
  if (!j.is_object()) throw InputError("top level must be an object");
  if (!j.contains("format") || j["format"] != format) fail("format", std::string("expected \"") + format + "\"");
  if (!j.contains("version") || !j["version"].is_number_integer()) fail("version", "missing or not an integer");
  if (j["version"].get<int>() != kFormatVersion) fail("version", "unsupported version " + j["version"].dump());
  return j;
}

const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) fail(path + key, "missing");
  return j[key];
}

double read_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "not a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(path, "not finite");
  return x;
}

int read_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "not an integer");
  return j.get<int>();
}

const json& read_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "not an array");
  return j;
}

Point read_point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected [x, y]");
  return Point(read_number(j[0], path + "[0]"), read_number(j[1], path + "[1]"));
}

std::vector<int> read_ints(const json& j, const std::string& path) {
  std::vector<int> out;
  const json& a = read_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(read_int(a[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::string text(const json& j) { return j.dump(1) + "\n"; }

json header(const char* format) {
  json j = json::object();
  j["format"] = format;
  j["version"] = kFormatVersion;
  return j;
}

}  // namespace

Polyline parse_curve(const std::string& t) {
  const json j = parse(t, "matchkit-curve");
  Polyline c;
  const json& closed = member(j, "closed", "");
  if (!closed.is_boolean()) fail("closed", "not a boolean");
  c.closed = closed.get<bool>();
  const json& pts = read_array(member(j, "points", ""), "points");
  for (std::size_t i = 0; i < pts.size(); ++i) c.points.push_back(read_point(pts[i], "points[" + std::to_string(i) + "]"));
  check_polyline(c);
  return c;
}

std::string format_curve(const Polyline& c) {
  json j = header("matchkit-curve");
  j["closed"] = c.closed;
  j["points"] = json::array();
  for (const auto& p : c.points) j["points"].push_back(point(p));
  return text(j);
}

Network parse_network(const std::string& t) {
  const json j = parse(t, "matchkit-network");
  std::vector<Point> pts;
  const json& vs = read_array(member(j, "vertices", ""), "vertices");
  for (std::size_t i = 0; i < vs.size(); ++i) pts.push_back(read_point(vs[i], "vertices[" + std::to_string(i) + "]"));
  std::vector<Edge> edges;
  const json& es = read_array(member(j, "edges", ""), "edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string path = "edges[" + std::to_string(i) + "]";
    if (!es[i].is_array() || es[i].size() != 2) fail(path, "expected [u, v]");
    const int u = read_int(es[i][0], path + "[0]"), v = read_int(es[i][1], path + "[1]");
    const int n = static_cast<int>(pts.size());
    if (u < 0 || v < 0 || u >= n || v >= n) fail(path, "vertex index out of range");
    if (u == v) fail(path, "self loop");
    edges.emplace_back(u, v);
  }
  return Network(std::move(pts), std::move(edges));
}

std::string format_network(const Network& n) {
  json j = header("matchkit-network");
  j["vertices"] = json::array();
  for (const auto& p : n.vertices()) j["vertices"].push_back(point(p));
  j["edges"] = json::array();
  for (const auto& e : n.edges()) j["edges"].push_back(json::array({e.u, e.v}));
  return text(j);
}

EmbeddedFormula parse_formula(const std::string& t) {
  const json j = parse(t, "matchkit-formula");
  EmbeddedFormula f;
  f.num_vars = read_int(member(j, "num_vars", ""), "num_vars");
  const json& cs = read_array(member(j, "clauses", ""), "clauses");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string path = "clauses[" + std::to_string(i) + "].";
    ClauseRecord c{};
    const std::vector<int> lits = read_ints(member(cs[i], "literals", path), path + "literals");
    if (lits.size() != 3) fail(path + "literals", "expected three literals");
    for (int k = 0; k < 3; ++k) c.literals[k] = lits[k];
    const json& side = member(cs[i], "side", path);
    if (side == "above") c.side = Side::Above;
    else if (side == "below") c.side = Side::Below;
    else fail(path + "side", "expected \"above\" or \"below\"");
    f.clauses.push_back(c);
  }
  try {
    validate_formula(f);
  } catch (const InputError& e) {
    throw InputError(std::string("formula: ") + e.what());
  }
  return f;
}

std::string format_formula(const EmbeddedFormula& f) {
  json j = header("matchkit-formula");
  j["num_vars"] = f.num_vars;
  j["clauses"] = json::array();
  for (const auto& c : f.clauses) {
    json r = json::object();
    r["literals"] = json::array({c.literals[0], c.literals[1], c.literals[2]});
    r["side"] = c.side == Side::Above ? "above" : "below";
    j["clauses"].push_back(r);
  }
  return text(j);
}

Walk parse_walk(const std::string& t) {
  const json j = parse(t, "matchkit-walk");
  Walk w;
  const json& shape = member(j, "shape", "");
  if (shape == "path") w.shape = WalkShape::Path;
  else if (shape == "cycle") w.shape = WalkShape::Cycle;
  else fail("shape", "expected \"path\" or \"cycle\"");
  w.vertex_ids = read_ints(member(j, "vertices", ""), "vertices");
  return w;
}

std::string format_walk(const Walk& w) {
  json j = header("matchkit-walk");
  j["shape"] = w.shape == WalkShape::Path ? "path" : "cycle";
  j["vertices"] = w.vertex_ids;
  return text(j);
}

std::string format_provenance(const Instance& inst) {
  json j = header("matchkit-provenance");
  j["gadgets"] = json::array();
  for (const auto& g : inst.provenance) {
    json r = json::object();
    r["id"] = g.id;
    r["vertices"] = g.vertices;
    r["edges"] = g.edges;
    if (g.box.isEmpty()) r["box"] = nullptr;
    else r["box"] = json::array({number(g.box.min().x()), number(g.box.min().y()), number(g.box.max().x()),
                                number(g.box.max().y())});
    r["boundary"] = json::array();
    for (const auto& p : g.boundary) r["boundary"].push_back(point(p));
    j["gadgets"].push_back(r);
  }
  j["t_marker"] = inst.t_marker;
  j["f_marker"] = inst.f_marker;
  return text(j);
}

void parse_provenance(const std::string& t, Instance& inst) {
  const json j = parse(t, "matchkit-provenance");
  inst.provenance.clear();
  const json& gs = read_array(member(j, "gadgets", ""), "gadgets");
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const std::string path = "gadgets[" + std::to_string(i) + "].";
    GadgetRecord g;
    const json& id = member(gs[i], "id", path);
    if (!id.is_string()) fail(path + "id", "not a string");
    g.id = id.get<std::string>();
    g.vertices = read_ints(member(gs[i], "vertices", path), path + "vertices");
    g.edges = read_ints(member(gs[i], "edges", path), path + "edges");
    const json& box = member(gs[i], "box", path);
    if (!box.is_null()) {
      if (!box.is_array() || box.size() != 4) fail(path + "box", "expected [x0, y0, x1, y1] or null");
      g.box.extend(Point(read_number(box[0], path + "box[0]"), read_number(box[1], path + "box[1]")));
      g.box.extend(Point(read_number(box[2], path + "box[2]"), read_number(box[3], path + "box[3]")));
    }
    const json& b = read_array(member(gs[i], "boundary", path), path + "boundary");
    for (std::size_t k = 0; k < b.size(); ++k) {
      g.boundary.push_back(read_point(b[k], path + "boundary[" + std::to_string(k) + "]"));
    }
    const int nv = static_cast<int>(inst.network.vertex_count()), ne = static_cast<int>(inst.network.edge_count());
    for (int v : g.vertices)
      if (v < 0 || v >= nv) fail(path + "vertices", "index out of range");
    for (int e : g.edges)
      if (e < 0 || e >= ne) fail(path + "edges", "index out of range");
    inst.provenance.push_back(std::move(g));
  }
  inst.t_marker = read_ints(member(j, "t_marker", ""), "t_marker");
  inst.f_marker = read_ints(member(j, "f_marker", ""), "f_marker");
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& t) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError("cannot write " + p.string());
  out << t;
  if (!out) throw InputError("write failed: " + p.string());
}

void write_instance(const std::filesystem::path& dir, const Instance& inst) {
  std::filesystem::create_directories(dir);
  write_file(dir / "network", format_network(inst.network));
  write_file(dir / "curve", format_curve(inst.curve));
  write_file(dir / "provenance", format_provenance(inst));
}

Instance read_instance(const std::filesystem::path& dir) {
  Instance inst;
  auto load = [&](const char* name, auto&& fn) {
    try {
      fn(read_file(dir / name));
    } catch (const InputError& e) {
      throw InputError((dir / name).string() + ": " + e.what());
    }
  };
  load("network", [&](const std::string& t) { inst.network = parse_network(t); });
  load("curve", [&](const std::string& t) { inst.curve = parse_curve(t); });
  load("provenance", [&](const std::string& t) { parse_provenance(t, inst); });
  return inst;
}

}  // namespace matchkit::io
