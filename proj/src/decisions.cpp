#include "mpgcore/decisions.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "mpgcore/payoff.hpp"

namespace mpgcore {

std::vector<Coalition> CoreSolver::coalitions() const {
  int n = g_.num_players();
  std::vector<Coalition> out;
  for (long mask = 1; mask < (1L << n); ++mask) {
    Coalition c;
    for (int i = 0; i < n; ++i)
      if (mask & (1L << i)) c.members.push_back(i);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Coalition& a, const Coalition& b) {
    if (a.members.size() != b.members.size())
      return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  return out;
}

const ValueSet& CoreSolver::values(const Coalition& c, int s) {
  auto key = std::make_pair(c.members, s);
  auto it = value_memo_.find(key);
  if (it == value_memo_.end())
    it = value_memo_.emplace(key, value_set(g_, c, s, budget_)).first;
  return it->second;
}

PolyUnion CoreSolver::coalition_region(const Coalition& c, int s) {
  auto key = std::make_pair(c.members, s);
  auto it = cregion_memo_.find(key);
  if (it != cregion_memo_.end()) return it->second;
  int n = g_.num_players();
  // A payoff is safe from improvement by C iff some adversary behaviour
  // pins it: for every reachable SCC hull of that behaviour, the payoff
  // lies on or beyond one of the hull's facets.
  PolyUnion out(n);
  for (const auto& hulls : strategy_unions(g_, c, s, budget_)) {
    std::vector<PolyUnion> factors;
    for (const auto& hull : hulls) {
      PolyUnion u(n);
      for (const auto& h : hull.ineqs) {
        Polyhedron cell(n);
        cell.ineqs.push_back(
            inclusion_map(complement_halfspace(h), c.members, n));
        u.parts.push_back(std::move(cell));
      }
      factors.push_back(std::move(u));
    }
    PolyUnion cell = distribute(factors);
    for (auto& p : cell.parts) out.parts.push_back(std::move(p));
  }
  out.normalize();
  return cregion_memo_.emplace(key, std::move(out)).first->second;
}

const NotDominatedRegion& CoreSolver::region(int s) {
  auto it = region_memo_.find(s);
  if (it != region_memo_.end()) return it->second;
  std::vector<PolyUnion> factors;
  for (const auto& c : coalitions()) factors.push_back(coalition_region(c, s));
  NotDominatedRegion out;
  out.state = s;
  out.region = distribute(factors);
  return region_memo_.emplace(s, std::move(out)).first->second;
}

const RatVec& CoreSolver::payoff_caps(int s) {
  auto it = caps_memo_.find(s);
  if (it != caps_memo_.end()) return it->second;
  // max weight over states reachable from s; no play from s can pay more
  std::vector<int> stack{s};
  std::set<int> seen{s};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (long k = 0; k < g_.profile_count(); ++k) {
      int t = g_.transitions[v][k];
      if (t >= 0 && seen.insert(t).second) stack.push_back(t);
    }
  }
  RatVec ub(g_.num_players());
  bool first = true;
  for (int v : seen) {
    for (int i = 0; i < g_.num_players(); ++i) {
      Rat w = Rat(g_.weights[v][i]);
      if (first || w > ub[i]) ub[i] = w;
    }
    first = false;
  }
  return caps_memo_.emplace(s, std::move(ub)).first->second;
}

Verdict CoreSolver::dominated(int s, const RatVec& x) {
  Verdict v;
  const RatVec& ub = payoff_caps(s);
  for (const auto& c : coalitions()) {
    bool capped = false;
    for (int i : c.members)
      if (x[i] >= ub[i]) capped = true;
    if (capped) continue;  // some member already at its ceiling
    ++v.stats.coalitions_checked;
    RatVec xc;
    for (int i : c.members) xc.push_back(x[i]);
    // a cached pinning adversary strategy often refutes improvability
    // without walking the strategy space again
    auto pk = std::make_pair(c.members, s);
    auto pit = pin_memo_.find(pk);
    if (pit != pin_memo_.end()) {
      bool pinned = true;
      for (const auto& pts : pit->second)
        if (margin_of_points(pts, xc) > 0) {
          pinned = false;
          break;
        }
      if (pinned) continue;
    }
    ImprovabilityCheck r = strictly_improvable_pinned(g_, c, s, xc, budget_);
    if (r.improvement) {
      v.answer = true;
      v.coalition = c;
      v.improvement = *r.improvement;
      v.stats.lps_solved = lp_call_count;
      return v;
    }
    pin_memo_[pk] = std::move(r.pin);
  }
  v.answer = false;
  v.stats.lps_solved = lp_call_count;
  return v;
}

Verdict CoreSolver::exists_beneficial_deviation(const StrategyProfile& p) {
  RatVec pay = compute_payoff(g_, p);
  Verdict v = dominated(g_.init, pay);
  v.payoff = pay;
  return v;
}

Verdict CoreSolver::membership(const StrategyProfile& p) {
  Verdict v = exists_beneficial_deviation(p);
  v.answer = !v.answer;
  return v;
}

Verdict CoreSolver::core_nonempty() {
  // a core profile is exactly a run every visited state of which is
  // undominated with respect to the run's payoff
  CircQuery q;
  if (auto v = solve_circulation(q)) return *v;
  Verdict v;
  v.answer = false;
  v.stats.lps_solved = lp_call_count;
  return v;
}

// ---------------------------------------------------------------------------
// E-Core / A-Core via circulations
// ---------------------------------------------------------------------------

namespace {

// Arena-level successor sets restricted to S (edges with both ends in S).
std::vector<std::vector<int>> arena_graph(const Game& g, const std::set<int>& S) {
  std::vector<std::vector<int>> adj(g.num_states());
  for (int s : S) {
    std::set<int> succ;
    for (long k = 0; k < g.profile_count(); ++k) {
      int t = g.transitions[s][k];
      if (t >= 0 && S.count(t)) succ.insert(t);
    }
    adj[s].assign(succ.begin(), succ.end());
  }
  return adj;
}

std::set<int> reachable_states(const Game& g) {
  std::set<int> all;
  for (int s = 0; s < g.num_states(); ++s) all.insert(s);
  auto adj = arena_graph(g, all);
  std::set<int> seen{g.init};
  std::vector<int> stack{g.init};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (seen.insert(w).second) stack.push_back(w);
  }
  return seen;
}

std::vector<int> bfs_path(const std::vector<std::vector<int>>& adj, int from,
                          const std::set<int>& targets) {
  std::map<int, int> parent;
  std::queue<int> q;
  q.push(from);
  parent[from] = from;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (targets.count(v)) {
      std::vector<int> path{v};
      while (v != from) {
        v = parent[v];
        path.push_back(v);
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (int w : adj[v])
      if (!parent.count(w)) {
        parent[w] = v;
        q.push(w);
      }
  }
  return {};
}

// Closed walk through every support edge with its multiplicity. Disconnected
// support components are spliced via round-trip paths inside the SCC; the
// splice preserves degree balance, so a Eulerian circuit exists.
Lasso build_lasso(const Game& g, const std::vector<std::vector<int>>& adjS,
                  const std::vector<std::pair<int, int>>& edges,
                  const RatVec& z) {
  mpz_class L = 1;
  for (const auto& q : z) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q.get_den().get_mpz_t());
  std::map<std::pair<int, int>, long> mult;
  std::set<int> support;
  for (size_t e = 0; e < edges.size(); ++e) {
    if (z[e] == 0) continue;
    Rat m = z[e] * Rat(L);
    mult[edges[e]] += m.get_num().get_si();
    support.insert(edges[e].first);
    support.insert(edges[e].second);
  }
  // undirected components of the support
  std::map<int, int> comp;
  int ncomp = 0;
  for (int v : support) {
    if (comp.count(v)) continue;
    std::vector<int> stack{v};
    comp[v] = ncomp;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (const auto& [e, m] : mult) {
        int o = -1;
        if (e.first == u) o = e.second;
        if (e.second == u) o = e.first;
        if (o >= 0 && !comp.count(o)) {
          comp[o] = comp[u];
          stack.push_back(o);
        }
      }
    }
    ++ncomp;
  }
  while (ncomp > 1) {
    // splice the component of the smallest vertex with another one
    int base = comp.begin()->second;
    std::set<int> others;
    for (const auto& [v, c] : comp)
      if (c != base) others.insert(v);
    int a = comp.begin()->first;
    auto there = bfs_path(adjS, a, others);
    int b = there.back();
    auto back = bfs_path(adjS, b, {a});
    auto add_walk = [&](const std::vector<int>& w) {
      for (size_t i = 0; i + 1 < w.size(); ++i) mult[{w[i], w[i + 1]}] += 1;
    };
    add_walk(there);
    add_walk(back);
    int merged = comp[b];
    for (auto& [v, c] : comp)
      if (c == merged) c = base;
    for (int v : there) comp.emplace(v, base);
    for (int v : back) comp.emplace(v, base);
    std::set<int> cs;
    for (const auto& [v, c] : comp) cs.insert(c);
    ncomp = static_cast<int>(cs.size());
  }
  // Hierholzer
  int start = *support.begin();
  std::vector<int> circuit, stack{start};
  auto remaining = mult;
  while (!stack.empty()) {
    int v = stack.back();
    auto it = std::find_if(remaining.begin(), remaining.end(), [&](const auto& em) {
      return em.first.first == v && em.second > 0;
    });
    if (it == remaining.end()) {
      circuit.push_back(v);
      stack.pop_back();
    } else {
      --it->second;
      stack.push_back(it->first.second);
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  circuit.pop_back();  // closed walk: drop the repeated endpoint
  Lasso out;
  out.cycle = circuit;
  if (g.init != circuit.front()) {
    auto stem = bfs_path(adjS, g.init, {circuit.front()});
    stem.pop_back();
    out.stem = stem;
  }
  return out;
}

}  // namespace

// Branch-and-cut search for a run every visited state of which is
// undominated with respect to the run's payoff. A node restricts the usable
// states and carries half-space commitments (normal . payoff >= bound)
// gathered from earlier domination counterexamples. When a candidate lasso's
// payoff is dominated at a visited state s by a coalition C, either the
// witness avoids s altogether (drop s) or its payoff escapes every part of
// val(G^C, s) through one of the part's facets (one child per combination of
// escape facets); the two branch kinds together cover all witnesses.
std::optional<Verdict> CoreSolver::solve_circulation(const CircQuery& q) {
  int n = g_.num_players();

  struct Cut {
    RatVec normal;  // normal . payoff >= bound, normal componentwise >= 0
    Rat bound;
    bool operator==(const Cut&) const = default;
  };
  struct Node {
    std::set<int> allowed;
    std::vector<Cut> cuts;
  };

  std::vector<Node> pending{{reachable_states(g_), {}}};
  long explored = 0;
  while (!pending.empty()) {
    Node node = std::move(pending.back());
    pending.pop_back();
    if (++explored > 20000)
      throw ResourceError("core run search exceeded its node budget");
    if (!node.allowed.count(g_.init)) continue;
    auto adjS = arena_graph(g_, node.allowed);
    bool branched = false;
    for (const auto& K : reachable_sccs(adjS, g_.init)) {
      std::set<int> kset(K.begin(), K.end());
      std::vector<std::pair<int, int>> edges;
      for (int u : K)
        for (int v : adjS[u])
          if (kset.count(v)) edges.push_back({u, v});
      int ne = static_cast<int>(edges.size());
      // quick reject: a required set disjoint from K can never recur
      bool possible = true;
      for (const auto& V : q.must_visit) {
        bool meets = false;
        for (int u : K)
          if (V.count(u)) meets = true;
        if (!meets) possible = false;
      }
      if (!possible) continue;

      Polyhedron base(ne);
      for (int e = 0; e < ne; ++e) {
        RatVec a(ne, Rat(0));
        a[e] = -1;
        base.ineqs.push_back({a, Rat(0)});
      }
      {
        RatVec a(ne, Rat(1));
        base.eqs.push_back({a, Rat(1)});
      }
      for (int u : K) {
        RatVec a(ne, Rat(0));
        bool nonzero = false;
        for (int e = 0; e < ne; ++e) {
          if (edges[e].first == u) {
            a[e] += 1;
            nonzero = true;
          }
          if (edges[e].second == u) {
            a[e] -= 1;
            nonzero = true;
          }
        }
        if (nonzero) base.eqs.push_back({a, Rat(0)});
      }
      for (const auto& A : q.must_avoid) {
        RatVec a(ne, Rat(0));
        bool nonzero = false;
        for (int e = 0; e < ne; ++e)
          if (A.count(edges[e].first)) {
            a[e] = 1;
            nonzero = true;
          }
        if (nonzero) base.eqs.push_back({a, Rat(0)});
      }
      // payoff_i = sum_e w_i(src(e)) z_e; cuts act on that expression
      auto pay_row = [&](const RatVec& normal) {
        RatVec a(ne, Rat(0));
        for (int e = 0; e < ne; ++e)
          for (int i = 0; i < n; ++i)
            a[e] += normal[i] * Rat(g_.weights[edges[e].first][i]);
        return a;
      };
      for (const auto& cut : node.cuts) {
        RatVec a = pay_row(cut.normal);
        for (auto& x : a) x = -x;
        base.ineqs.push_back({a, -cut.bound});
      }

      // undirected components of the support, as edge index lists
      auto support_components = [&](const RatVec& z) {
        std::map<int, int> comp;
        int nc = 0;
        for (int e = 0; e < ne; ++e) {
          if (z[e] == 0) continue;
          if (!comp.count(edges[e].first)) comp[edges[e].first] = nc++;
        }
        for (bool merged = true; merged;) {
          merged = false;
          for (int e = 0; e < ne; ++e) {
            if (z[e] == 0) continue;
            int a = comp[edges[e].first], b2 = comp[edges[e].second];
            if (a == b2) continue;
            for (auto& [v, c] : comp)
              if (c == b2) c = a;
            merged = true;
          }
        }
        std::map<int, std::vector<int>> by;
        for (int e = 0; e < ne; ++e)
          if (z[e] != 0) by[comp[edges[e].first]].push_back(e);
        std::vector<std::vector<int>> out;
        for (auto& [c, es] : by) out.push_back(std::move(es));
        return out;
      };

      // A finite-memory run realizes a circulation only if the support is
      // connected. Solve on an edge subset; when the optimum's support is
      // disconnected, restrict to the components of the subset's maximal
      // feasible support and retry inside each.
      std::function<std::optional<RatVec>(const std::vector<char>&)> find_cand =
          [&](const std::vector<char>& active) -> std::optional<RatVec> {
        Polyhedron lp = base;
        for (int e = 0; e < ne; ++e)
          if (!active[e]) {
            RatVec a(ne, Rat(0));
            a[e] = 1;
            lp.eqs.push_back({a, Rat(0)});
          }
        if (!q.must_visit.empty()) {
          // the least guarantee-visit mass, maximized, must be positive
          Polyhedron mlp = lp;
          mlp.dim = ne + 1;
          for (auto& h : mlp.ineqs) h.normal.push_back(Rat(0));
          for (auto& eq : mlp.eqs) eq.coeffs.push_back(Rat(0));
          for (const auto& V : q.must_visit) {
            RatVec a(ne + 1, Rat(0));
            for (int e = 0; e < ne; ++e)
              if (V.count(edges[e].first)) a[e] = -1;
            a[ne] = 1;
            mlp.ineqs.push_back({a, Rat(0)});
          }
          RatVec obj(ne + 1, Rat(0));
          obj[ne] = 1;
          LpResult mr = lp_solve(obj, mlp);
          if (mr.status != LpStatus::Optimum || mr.value <= 0)
            return std::nullopt;
          for (const auto& V : q.must_visit) {
            RatVec a(ne, Rat(0));
            for (int e = 0; e < ne; ++e)
              if (V.count(edges[e].first)) a[e] = -1;
            lp.ineqs.push_back({a, -mr.value});
          }
        }
        LpResult r = lp_solve(pay_row(RatVec(n, Rat(1))), lp);
        if (r.status != LpStatus::Optimum) return std::nullopt;
        RatVec z(r.point.begin(), r.point.begin() + ne);
        auto comps = support_components(z);
        if (comps.size() == 1) return z;
        if (comps.empty()) return std::nullopt;
        // maximal support of the feasible region: average of per-edge maxima
        RatVec acc = z;
        long cnt = 1;
        std::vector<char> covered(ne, 0);
        for (int e = 0; e < ne; ++e) covered[e] = z[e] != 0;
        for (int e = 0; e < ne; ++e) {
          if (!active[e] || covered[e]) continue;
          RatVec obj(ne, Rat(0));
          obj[e] = 1;
          LpResult re = lp_solve(obj, lp);
          if (re.status == LpStatus::Optimum && re.value > 0) {
            for (int e2 = 0; e2 < ne; ++e2) {
              acc[e2] += re.point[e2];
              if (re.point[e2] != 0) covered[e2] = 1;
            }
            ++cnt;
          }
        }
        for (auto& v : acc) v /= Rat(cnt);
        auto mcomps = support_components(acc);
        if (mcomps.size() == 1) {
          // connect the optimum by blending in a sliver of the full support
          RatVec out(ne, Rat(0));
          for (int e = 0; e < ne; ++e)
            out[e] = z[e] + (acc[e] - z[e]) / Rat(1024);
          return out;
        }
        for (const auto& c : mcomps) {
          std::vector<char> sub(ne, 0);
          for (int e : c) sub[e] = 1;
          if (auto res = find_cand(sub)) return res;
        }
        return std::nullopt;
      };

      auto zc = find_cand(std::vector<char>(ne, 1));
      if (!zc) continue;
      RatVec z = *zc;
      RatVec pay(n, Rat(0));
      for (int e = 0; e < ne; ++e)
        for (int i = 0; i < n; ++i)
          pay[i] += Rat(g_.weights[edges[e].first][i]) * z[e];

      std::set<int> support;
      for (int e = 0; e < ne; ++e)
        if (z[e] != 0) {
          support.insert(edges[e].first);
          support.insert(edges[e].second);
        }
      auto stem = bfs_path(adjS, g_.init, support);
      std::set<int> visited(stem.begin(), stem.end());
      visited.insert(support.begin(), support.end());

      std::optional<std::pair<int, Coalition>> violation;
      for (int s : visited) {
        Verdict vd = dominated(s, pay);
        if (vd.answer) {
          violation = {s, *vd.coalition};
          break;
        }
      }
      if (!violation) {
        Verdict v;
        v.answer = true;
        v.payoff = pay;
        std::vector<std::tuple<int, int, Rat>> circ;
        for (int e = 0; e < ne; ++e)
          if (z[e] != 0) circ.push_back({edges[e].first, edges[e].second, z[e]});
        v.circulation = circ;
        v.state_set = visited;
        v.lasso = build_lasso(g_, adjS, edges, z);
        v.stats.lps_solved = lp_call_count;
        return v;
      }

      auto [s, c] = *violation;
      if (s != g_.init) {
        Node drop = node;
        drop.allowed.erase(s);
        pending.push_back(std::move(drop));
      }
      // keep s: the payoff must leave every part of val(G^C, s) through a
      // facet that stays violated along the improvement direction (1,...,1)
      const ValueSet& vs = values(c, s);
      std::vector<std::vector<Cut>> options;
      bool escapable = true;
      for (const auto& part : vs.hull.parts) {
        std::vector<Cut> facets;
        auto consider = [&](const RatVec& a, const Rat& b) {
          Rat diag(0);
          for (const auto& x : a) diag += x;
          if (diag <= 0) return;
          RatVec full(n, Rat(0));
          for (size_t j = 0; j < c.members.size(); ++j)
            full[c.members[j]] = a[j];
          facets.push_back({full, b});
        };
        for (const auto& h : part.ineqs) consider(h.normal, h.bound);
        for (const auto& eq : part.eqs) {
          consider(eq.coeffs, eq.rhs);
          RatVec neg = eq.coeffs;
          for (auto& x : neg) x = -x;
          consider(neg, -eq.rhs);
        }
        if (facets.empty()) {
          escapable = false;
          break;
        }
        options.push_back(std::move(facets));
      }
      if (escapable) {
        std::vector<std::vector<Cut>> combos{{}};
        for (const auto& facets : options) {
          std::vector<std::vector<Cut>> next;
          if (combos.size() * facets.size() > 4096)
            throw ResourceError("core run search: escape combinations blew up");
          for (const auto& base : combos)
            for (const auto& f : facets) {
              auto cs = base;
              cs.push_back(f);
              next.push_back(std::move(cs));
            }
          combos = std::move(next);
        }
        for (auto& cs : combos) {
          Node keep = node;
          for (auto& f : cs)
            if (std::find(keep.cuts.begin(), keep.cuts.end(), f) ==
                keep.cuts.end())
              keep.cuts.push_back(std::move(f));
          pending.push_back(std::move(keep));
        }
      }
      branched = true;
      break;  // children supersede this node
    }
    (void)branched;
  }
  return std::nullopt;
}

Verdict CoreSolver::e_core_gr1(const Gr1Spec& spec) {
  // run satisfies spec iff all guarantees recur, or some premise does not
  {
    CircQuery q;
    for (const auto& th : spec.guarantees)
      q.must_visit.push_back(sat_states(g_, th));
    if (auto v = solve_circulation(q)) return *v;
  }
  for (const auto& psi : spec.premises) {
    CircQuery q;
    q.must_avoid.push_back(sat_states(g_, psi));
    if (auto v = solve_circulation(q)) return *v;
  }
  Verdict v;
  v.answer = false;
  v.stats.lps_solved = lp_call_count;
  return v;
}

Verdict CoreSolver::a_core_gr1(const Gr1Spec& spec) {
  Verdict v;
  for (const auto& bundle : negate_gr1(spec)) {
    CircQuery q;
    for (const auto& psi : bundle.infinitely_often)
      q.must_visit.push_back(sat_states(g_, psi));
    q.must_avoid.push_back(sat_states(g_, bundle.finitely_often));
    if (auto cex = solve_circulation(q)) {
      v = *cex;
      v.answer = false;  // counterexample run violating the spec
      return v;
    }
  }
  v.answer = true;
  v.stats.lps_solved = lp_call_count;
  return v;
}

// ---------------------------------------------------------------------------
// Free-function wrappers
// ---------------------------------------------------------------------------

Verdict dominated(const Game& g, int s, const RatVec& x, const ValueBudget& b) {
  return CoreSolver(g, b).dominated(s, x);
}

Verdict exists_beneficial_deviation(const Game& g, const StrategyProfile& p,
                                    const ValueBudget& b) {
  return CoreSolver(g, b).exists_beneficial_deviation(p);
}

Verdict membership(const Game& g, const StrategyProfile& p, const ValueBudget& b) {
  return CoreSolver(g, b).membership(p);
}

NotDominatedRegion not_dominated_region(const Game& g, int s, const ValueBudget& b) {
  CoreSolver solver(g, b);
  return solver.region(s);
}

Verdict core_nonempty(const Game& g, const ValueBudget& b) {
  return CoreSolver(g, b).core_nonempty();
}

Verdict e_core_gr1(const Game& g, const Gr1Spec& spec, const ValueBudget& b) {
  return CoreSolver(g, b).e_core_gr1(spec);
}

Verdict a_core_gr1(const Game& g, const Gr1Spec& spec, const ValueBudget& b) {
  return CoreSolver(g, b).a_core_gr1(spec);
}

}  // namespace mpgcore
