#include "mpgcore/oracle.hpp"

#include <algorithm>
#include <map>

#include "mpgcore/geometry.hpp"
#include "mpgcore/payoff.hpp"
#include "mpgcore/sequentialise.hpp"
#include "mpgcore/values.hpp"

namespace mpgcore {

namespace {

// Mean payoff of the unique play when everyone is memoryless: follow the
// state sequence until it revisits a state, average over the loop.
RatVec memoryless_payoff(const Game& g, const std::vector<std::vector<int>>& acts) {
  int n = g.num_players();
  std::vector<int> seen_at(g.num_states(), -1);
  std::vector<int> path;
  int s = g.init;
  while (seen_at[s] < 0) {
    seen_at[s] = static_cast<int>(path.size());
    path.push_back(s);
    std::vector<int> a(n);
    for (int i = 0; i < n; ++i) a[i] = acts[i][s];
    s = step(g, s, g.profile_index(a));
  }
  int first = seen_at[s];
  RatVec out(n, Rat(0));
  for (size_t k = first; k < path.size(); ++k)
    for (int i = 0; i < n; ++i) out[i] += Rat(g.weights[path[k]][i]);
  Rat len(static_cast<long>(path.size() - first));
  for (auto& v : out) v /= len;
  return out;
}

// Odometer over per-state action choices for the given players. Returns
// false when fn asked to stop.
bool each_assignment(const Game& g, const std::vector<int>& who,
                     std::vector<std::vector<int>>& acts,
                     const std::function<bool()>& fn) {
  std::vector<std::pair<int, int>> slots;  // (player, state)
  for (int i : who)
    for (int s = 0; s < g.num_states(); ++s) {
      acts[i][s] = 0;
      slots.emplace_back(i, s);
    }
  for (;;) {
    if (!fn()) return false;
    size_t k = 0;
    for (; k < slots.size(); ++k) {
      auto [i, s] = slots[k];
      if (++acts[i][s] < static_cast<int>(g.actions[i].size())) break;
      acts[i][s] = 0;
    }
    if (k == slots.size()) return true;
  }
}

}  // namespace

Tri brute_membership(const Game& g, const StrategyProfile& p,
                     const BruteForceBudget& budget) {
  RatVec base = compute_payoff(g, p);
  int n = g.num_players();
  std::vector<std::vector<int>> acts(n, std::vector<int>(g.num_states(), 0));
  long work = 0;
  bool over = false, found = false;

  for (long mask = 1; mask < (1L << n) && !found && !over; ++mask) {
    std::vector<int> members, rest;
    for (int i = 0; i < n; ++i)
      ((mask >> i) & 1 ? members : rest).push_back(i);
    each_assignment(g, members, acts, [&] {
      bool beats_all = true;
      each_assignment(g, rest, acts, [&] {
        if (++work > budget.max_memoryless_profiles) {
          over = true;
          return false;
        }
        RatVec pay = memoryless_payoff(g, acts);
        for (int i : members)
          if (pay[i] <= base[i]) {
            beats_all = false;
            return false;
          }
        return true;
      });
      if (over) return false;
      if (beats_all) {
        found = true;
        return false;
      }
      return true;
    });
  }
  if (found) return Tri::no;
  return over ? Tri::inconclusive : Tri::yes;
}

Tri brute_enforce(const Game& g, const Coalition& c, const std::string& s,
                  const RatVec& x, const BruteForceBudget& budget) {
  MMPG m = sequentialise(g, c);
  int start = g.state_index(s);
  long D = budget.max_denominator;
  bool over = false, refuted = false, gap = false;

  enumerate_p2(m, [&](const MemorylessP2& s2) {
    auto graph = induced_subgame(m, s2);
    bool strat_ok = false;
    std::vector<std::vector<RatVec>> scc_points;
    for (const auto& scc : reachable_sccs(graph, start)) {
      std::vector<RatVec> pts;
      for (const auto& cy : simple_cycles(graph, scc, budget.max_memoryless_profiles))
        pts.push_back(cycle_average(cy, m.weights));
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      scc_points.push_back(pts);
      if (static_cast<long>(pts.size()) > budget.max_cycle_points) {
        over = true;
        return false;
      }
      // Compositions n_1 + ... + n_m = D of denominator units over the
      // cycle points; accept when the combination dominates x.
      long work = 0;
      std::vector<long> units(pts.size(), 0);
      std::function<bool(size_t, long)> rec = [&](size_t j, long left) {
        if (++work > budget.max_memoryless_profiles) {
          over = true;
          return false;
        }
        if (j + 1 == units.size()) {
          units[j] = left;
          for (size_t d = 0; d < x.size(); ++d) {
            Rat acc(0);
            for (size_t k = 0; k < pts.size(); ++k)
              acc += Rat(units[k]) * pts[k][d];
            if (acc < Rat(D) * x[d]) return false;
          }
          return true;
        }
        for (long u = 0; u <= left; ++u) {
          units[j] = u;
          if (rec(j + 1, left - u)) return true;
          if (over) return false;
        }
        return false;
      };
      if (!pts.empty() && rec(0, D)) strat_ok = true;
      if (over) return false;
      if (strat_ok) break;
    }
    if (!strat_ok) {
      // No bounded combination works for this adversary behaviour; certify
      // with an exact feasibility check before calling it a refutation.
      bool exact_ok = false;
      for (const auto& pts : scc_points)
        if (!pts.empty() && down_conv_membership(pts, x)) {
          exact_ok = true;
          break;
        }
      if (exact_ok)
        gap = true;  // witness exists but needs finer coefficients
      else
        refuted = true;
      return false;
    }
    return true;
  });

  if (refuted) return Tri::no;
  if (over || gap) return Tri::inconclusive;
  return Tri::yes;
}

}  // namespace mpgcore
