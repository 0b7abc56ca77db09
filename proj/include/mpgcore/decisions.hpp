#ifndef MPGCORE_DECISIONS_HPP
#define MPGCORE_DECISIONS_HPP

#include <map>
#include <optional>

#include "mpgcore/game.hpp"
#include "mpgcore/geometry.hpp"
#include "mpgcore/gr1.hpp"
#include "mpgcore/values.hpp"

namespace mpgcore {

struct Stats {
  long coalitions_checked = 0;
  long lps_solved = 0;
};

struct Verdict {
  bool answer = false;
  std::optional<Coalition> coalition;  // deviating coalition
  std::optional<RatVec> improvement;   // coalition payoffs after deviating
  std::optional<RatVec> payoff;        // full payoff vector witness
  std::optional<Lasso> lasso;          // run witness / counterexample
  // Edge frequencies (src, dst, z) backing a run witness; nonnegative,
  // flow-conserving, summing to 1. Enables algebraic re-verification.
  std::optional<std::vector<std::tuple<int, int, Rat>>> circulation;
  std::optional<std::set<int>> state_set;  // the S the witness stays inside
  Stats stats;
};

struct NotDominatedRegion {
  int state = 0;
  PolyUnion region;  // dimension |N|
};

// Shared solver with per-state memoization of value sets and regions.
class CoreSolver {
 public:
  explicit CoreSolver(const Game& g, const ValueBudget& budget = {})
      : g_(g), budget_(budget) {}

  const Game& game() const { return g_; }

  // Non-empty coalitions, ordered by size then lexicographically.
  std::vector<Coalition> coalitions() const;

  const ValueSet& values(const Coalition& c, int s);
  const NotDominatedRegion& region(int s);
  // Payoff vectors (dimension |N|) that C cannot strictly improve on.
  PolyUnion coalition_region(const Coalition& c, int s);
  // Per-player maximum weight over states reachable from s.
  const RatVec& payoff_caps(int s);

  Verdict dominated(int s, const RatVec& x);
  Verdict exists_beneficial_deviation(const StrategyProfile& p);
  Verdict membership(const StrategyProfile& p);
  Verdict core_nonempty();
  Verdict e_core_gr1(const Gr1Spec& spec);
  Verdict a_core_gr1(const Gr1Spec& spec);

 private:
  const Game& g_;
  ValueBudget budget_;
  std::map<std::pair<std::vector<int>, int>, ValueSet> value_memo_;
  std::map<std::pair<std::vector<int>, int>, PolyUnion> cregion_memo_;
  std::map<int, NotDominatedRegion> region_memo_;
  std::map<int, RatVec> caps_memo_;
  std::map<std::pair<std::vector<int>, int>, std::vector<std::vector<RatVec>>>
      pin_memo_;

  struct CircQuery {
    std::vector<std::set<int>> must_visit;  // support meets each set
    std::vector<std::set<int>> must_avoid;  // support misses each set
  };
  // Is there a core run whose cycle behaviour satisfies the query?
  std::optional<Verdict> solve_circulation(const CircQuery& q);
};

Verdict dominated(const Game& g, int s, const RatVec& x,
                  const ValueBudget& budget = {});
Verdict exists_beneficial_deviation(const Game& g, const StrategyProfile& p,
                                    const ValueBudget& budget = {});
Verdict membership(const Game& g, const StrategyProfile& p,
                   const ValueBudget& budget = {});
NotDominatedRegion not_dominated_region(const Game& g, int s,
                                        const ValueBudget& budget = {});
Verdict core_nonempty(const Game& g, const ValueBudget& budget = {});
Verdict e_core_gr1(const Game& g, const Gr1Spec& spec,
                   const ValueBudget& budget = {});
Verdict a_core_gr1(const Game& g, const Gr1Spec& spec,
                   const ValueBudget& budget = {});

}  // namespace mpgcore

#endif
