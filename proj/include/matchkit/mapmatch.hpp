#ifndef MATCHKIT_MAPMATCH_HPP
#define MATCHKIT_MAPMATCH_HPP

#include "matchkit/frechet.hpp"
#include "matchkit/network.hpp"

namespace matchkit {

/// True iff some walk of the given shape in net, not necessarily simple,
/// is within eps of c under the given monotonicity. Walks have at least
/// one edge. Cycle shape needs a closed curve and path shape an open one.
bool decide_graph_match(const Network& net, const Polyline& c, double eps, Monotonicity monotonicity,
                        WalkShape shape);

}  // namespace matchkit

#endif  // MATCHKIT_MAPMATCH_HPP
