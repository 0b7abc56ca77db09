#ifndef MPGCORE_VALUES_HPP
#define MPGCORE_VALUES_HPP

#include <optional>

#include "mpgcore/game.hpp"
#include "mpgcore/geometry.hpp"
#include "mpgcore/sequentialise.hpp"

namespace mpgcore {

// Budgets for the polyhedral value computation. cycle_cap bounds simple-cycle
// enumeration per SCC; strategy_cap bounds the number of distinct player-2
// behaviours examined per value-set query.
struct ValueBudget {
  long cycle_cap = 100000;
  long strategy_cap = 1000000;
};

// Enforceable-value set of a coalition from a state: a downward-closed
// finite union of polyhedra in dimension |C|. Each part also carries the
// generator points its facets were computed from.
struct ValueSet {
  Coalition coalition;
  int start = 0;
  PolyUnion hull;                         // H-representation
  std::vector<std::vector<RatVec>> gens;  // V-representation per part
};

// SCCs of `graph` reachable from v0 that contain at least one edge.
std::vector<std::vector<int>> reachable_sccs(
    const std::vector<std::vector<int>>& graph, int v0);

// All simple cycles within `scc`, canonically rotated to start at the
// smallest vertex. Throws ResourceError past `cap`.
std::vector<std::vector<int>> simple_cycles(
    const std::vector<std::vector<int>>& graph, const std::vector<int>& scc,
    long cap);

RatVec cycle_average(const std::vector<int>& cycle,
                     const std::vector<RatVec>& weights);

// Deduplicated per-adversary-behaviour unions: for each memoryless player-2
// strategy of the sequentialisation (up to producing the same reachable
// cycle structure), the list of downward-convex hulls of cycle averages of
// its reachable SCCs. value_set is the intersection of these unions.
std::vector<std::vector<Polyhedron>> strategy_unions(
    const Game& g, const Coalition& c, int s, const ValueBudget& budget = {});

ValueSet value_set(const Game& g, const Coalition& c, int s,
                   const ValueBudget& budget = {});

// Maximal simple-cycle averages per reachable SCC under the first adversary
// behaviour. Intended for the grand coalition, where the adversary is a
// dummy and these are exactly the achievable extremal payoffs.
std::vector<std::vector<RatVec>> achievable_points(const Game& g,
                                                   const Coalition& c, int s,
                                                   const ValueBudget& budget = {});

// Largest t with x + t*(1,...,1) enforceable by C from s. Value sets are
// closed, downward closed and bounded above, so the margin is finite and
// attained; it is positive exactly when some enforceable z exceeds x in
// every coordinate. With exact=false the search stops at the first
// adversary behaviour forcing a nonpositive margin and returns that bound.
Rat enforce_margin(const Game& g, const Coalition& c, int s, const RatVec& x,
                   const ValueBudget& budget = {}, bool exact = false);

// x enforceable by C from s? Equivalent to hull membership in value_set but
// decided per player-2 strategy without distributing the intersection.
bool can_enforce(const Game& g, const Coalition& c, int s, const RatVec& x,
                 const ValueBudget& budget = {});

// A point z of val(G^C, s) with z_i > x_i for every coalition member, if
// one exists (max-margin LP over each part).
std::optional<RatVec> strictly_improvable(const Game& g, const Coalition& c,
                                          int s, const RatVec& x,
                                          const ValueBudget& budget = {});
struct ImprovabilityCheck {
  std::optional<RatVec> improvement;     // set when strictly improvable
  std::vector<std::vector<RatVec>> pin;  // point sets of an adversary strategy
                                         // whose margin is non-positive
};
ImprovabilityCheck strictly_improvable_pinned(const Game& g, const Coalition& c,
                                              int s, const RatVec& x,
                                              const ValueBudget& budget = {});
Rat margin_of_points(const std::vector<RatVec>& pts, const RatVec& x);

}  // namespace mpgcore

#endif
