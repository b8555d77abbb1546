// Planar 3-SAT to simple-cycle map matching.
#ifndef MATCHKIT_REDUCTION_HPP
#define MATCHKIT_REDUCTION_HPP

#include "matchkit/frechet.hpp"
#include "matchkit/network.hpp"
#include "matchkit/simplematch.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace matchkit {

/// Thrown when a formula cannot be laid out (bad nesting, bend too short,
/// stitching that would self-intersect). The message names the gadget.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PortRole { TPort, FPort, ClausePort, ChainEnd };

struct Port {
  Segment edge;
  PortRole role;
};

/// A piece of the reduction: network fragment, the curve it must follow,
/// the two curve gates and the unit edges it shares with neighbours.
struct Gadget {
  std::vector<Segment> network;
  Polyline curve;  // open, from gates[0] to gates[1]
  Point gates[2];
  std::vector<Port> ports;
  std::vector<Point> boundary;  // rectilinear polygon, counter-clockwise

  Network build_network() const;
  void translate(const Point& d);
  /// Reflects across the vertical line x = axis.
  void mirror_x(double axis);
  /// Reflects across the horizontal line y = axis.
  void mirror_y(double axis);
  void reverse_curve();
  Eigen::AlignedBox2d bounds() const;
};

/// Problems with a single gadget; empty when it is well formed.
std::vector<std::string> check_gadget(const Gadget& g);

/// Orientation of the rectangle's long side. A horizontal block's curve runs
/// vertically through it; a vertical block's curve runs horizontally.
enum class BlockKind { Horizontal, Vertical };
enum class Parity { Even, Odd };
/// Which arm of the first block carries the curve's start. For vertical
/// chains "up" means the right-hand arm.
enum class Alternation { FirstArmUp, FirstArmDown };
enum class BendKind { None, Left, Right };

/// Gate-to-gate simple paths of a gadget's own network at eps, with the
/// network edges of the flagged ports removed (port pressure).
struct GadgetPaths {
  SearchStatus status = SearchStatus::Infeasible;  // BudgetExhausted if cut short
  std::vector<Walk> walks;
  /// uses[i][p]: walk i runs along port p.
  std::vector<std::vector<bool>> uses;
};

GadgetPaths gadget_paths(const Gadget& g, double eps, const std::vector<bool>& removed = {},
                         Monotonicity monotonicity = Monotonicity::Strong, std::size_t limit = 100000);

/// Horizontal blocks have rectangle [0,span]x[0,1]; vertical ones are the
/// transpose. Ports: the two sides a neighbouring block may share.
Gadget build_block(BlockKind kind, int span);

/// Block spans of a chain of length d with block count of the given parity.
std::vector<int> chain_blocks(int d, Parity parity);

/// Chain of length d starting at the origin. Horizontal chains run along
/// +x with rectangles in 0 <= y <= 1; vertical chains run along +y with
/// rectangles in 0 <= x <= 1. Ports are the two far ends.
Gadget build_chain(int d, BlockKind orientation, Parity parity, Alternation alt);

/// A vertical 2-block joined at a corner with a horizontal 2-block, near
/// arms dropped. Right: V = [0,1]x[0,2], H = [1,3]x[2,3]. Left is the mirror.
Gadget build_bend(BendKind direction);

/// Box [0,4]x[0,k] (plus the horizontal arm when bent), gates (0,1), (4,1).
/// The bottom port is where the variable attaches; the other port faces the
/// clause: on top for straight gadgets, at the far end of the arm otherwise.
Gadget build_propagation(int k, BendKind bend = BendKind::None, int k2 = 0);

/// Box [0,4+11k]x[0,16] with gates (0,9) and (0,11). Pair i has its T-port
/// at x = 6+11i on top and x = 8+11i at the bottom; F is the other one.
Gadget build_variable(int k_above, int k_below);

/// Box [0,3]x[0,8], gates (1,8) and (2,8); ports left, bottom, right.
Gadget build_clause();

// ---------------------------------------------------------------------------
// Formulas

enum class Side { Above, Below };

/// Literals are +v / -v with 1-based variables.
struct ClauseRecord {
  int literals[3];  // left, middle, right
  Side side;
};

struct EmbeddedFormula {
  int num_vars = 0;
  std::vector<ClauseRecord> clauses;
};

/// Rejects formulas whose layout cannot be realised. Throws InputError.
void validate_formula(const EmbeddedFormula& f);

/// Dominance number per clause, in input order.
std::vector<int> compute_dominance(const EmbeddedFormula& f);

/// Where a variable occurrence attaches: side and slot.
struct Occurrence {
  int clause;
  int position;  // 0 left, 1 middle, 2 right
  Side side;
  int slot;
};

/// Slot assignment: out[v] for variable v (out[0] is unused), occurrences on
/// each side numbered by the x-order of their legs.
std::vector<std::vector<Occurrence>> assign_slots(const EmbeddedFormula& f);

// ---------------------------------------------------------------------------
// Instances

enum class Variant { Closed, Open };

struct GadgetRecord {
  std::string id;  // "var1", "clause0", "prop0.m", "rail"
  std::vector<int> vertices;
  std::vector<int> edges;
  Eigen::AlignedBox2d box;
  std::vector<Point> boundary;  // empty for the rails
};

struct Instance {
  Network network;
  Polyline curve;
  std::vector<GadgetRecord> provenance;
  /// Per variable, an edge of the first occurrence block's T tine (F tine)
  /// that only the T-state (F-state) walk uses.
  std::vector<int> t_marker, f_marker;

  const GadgetRecord* find(const std::string& id) const;
};

Instance reduce(const EmbeddedFormula& f, Variant variant = Variant::Closed);

/// Empty iff the curve is simple, the network is valid, every curve segment
/// runs along network edges and gadget boxes only meet on their boundaries.
std::vector<std::string> validate_instance(const Instance& inst);

/// Reads the truth values off a witness cycle: a variable is true when its
/// walk visits the T tine.
std::vector<bool> decode_assignment(const Instance& inst, const Walk& w);

}  // namespace matchkit

#endif  // MATCHKIT_REDUCTION_HPP
