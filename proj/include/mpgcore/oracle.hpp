#ifndef MPGCORE_ORACLE_HPP
#define MPGCORE_ORACLE_HPP

#include "mpgcore/game.hpp"

namespace mpgcore {

enum class Tri { yes, no, inconclusive };

struct BruteForceBudget {
  long max_memoryless_profiles = 2000000;  // also caps combination search work
  long max_denominator = 12;
  long max_cycle_points = 16;
};

// Searches all memoryless coalition deviations against all memoryless
// counter-responses. `no` means a deviation was found that beats every
// counter-response strictly for every member; `yes` only means no such
// deviation exists in the memoryless search space.
Tri brute_membership(const Game& g, const StrategyProfile& p,
                     const BruteForceBudget& budget = {});

// Checks enforceability of x for coalition c from state s by bounded convex
// combinations of simple-cycle averages (coefficient denominators up to
// max_denominator). A `no` is certified by an exact feasibility re-check.
Tri brute_enforce(const Game& g, const Coalition& c, const std::string& s,
                  const RatVec& x, const BruteForceBudget& budget = {});

}  // namespace mpgcore

#endif
