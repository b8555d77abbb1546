#ifndef MATCHKIT_NETWORK_HPP
#define MATCHKIT_NETWORK_HPP

#include "matchkit/frechet.hpp"
#include "matchkit/geom.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace matchkit {

/// Undirected edge between vertex indices, stored with u <= v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}
  bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
  bool operator<(const Edge& o) const { return u != o.u ? u < o.u : v < o.v; }
};

struct Neighbor {
  int vertex;
  int edge;
};

/// Straight-line embedded graph. Stores exactly what it was given so that
/// validate() can report problems; adjacency ignores self-loops and
/// duplicate edges.
class Network {
 public:
  Network() = default;
  Network(std::vector<Point> vertices, std::vector<Edge> edges);

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const Point& vertex(int i) const { return vertices_[i]; }
  Segment segment(int e) const { return {vertices_[edges_[e].u], vertices_[edges_[e].v]}; }

  /// Neighbors in ascending vertex order.
  const std::vector<Neighbor>& neighbors(int v) const { return adjacency_[v]; }
  /// Edge index joining a and b, or -1.
  int edge_between(int a, int b) const;

 private:
  std::vector<Point> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// Assembles a network, merging vertices at identical coordinates and
/// dropping repeated edges.
class NetworkBuilder {
 public:
  int add_vertex(const Point& p);
  /// Returns the edge index; adding an existing edge returns its index.
  int add_edge(int a, int b);
  int add_segment(const Point& a, const Point& b) { return add_edge(add_vertex(a), add_vertex(b)); }
  /// Vertex index at p, or -1.
  int find_vertex(const Point& p) const;
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  Network build() const { return Network(vertices_, edges_); }

 private:
  std::vector<Point> vertices_;
  std::vector<Edge> edges_;
  std::map<std::pair<double, double>, int> by_coord_;
  std::map<Edge, int> by_edge_;
};

enum class WalkShape { Path, Cycle };
enum class Simplicity { Vertex, Edge };

/// Vertex sequence in a network. A cycle does not repeat its first vertex
/// at the end; the closing edge is implied.
struct Walk {
  std::vector<int> vertex_ids;
  WalkShape shape = WalkShape::Path;

  bool operator==(const Walk& o) const { return vertex_ids == o.vertex_ids && shape == o.shape; }
  std::size_t edge_count() const {
    if (vertex_ids.size() < 2) return 0;
    return shape == WalkShape::Cycle ? vertex_ids.size() : vertex_ids.size() - 1;
  }
};

struct Violation {
  enum class Kind { DuplicateVertex, SelfLoop, DuplicateEdge, BadIndex, DegenerateEdge, Crossing };
  Kind kind;
  int first = -1;   // vertex or edge index, depending on kind
  int second = -1;
  std::string message;
};

/// Empty iff the network is a valid planar straight-line embedding.
std::vector<Violation> validate(const Network& net);

/// Throws InputError if consecutive ids are not joined by edges.
void check_walk(const Network& net, const Walk& w);

bool is_simple_walk(const Network& net, const Walk& w, Simplicity mode);

Polyline curve_of_walk(const Network& net, const Walk& w);

}  // namespace matchkit

#endif  // MATCHKIT_NETWORK_HPP
