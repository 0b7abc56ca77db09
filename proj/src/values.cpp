#include "mpgcore/values.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mpgcore {

// ---------------------------------------------------------------------------
// Graph algorithms
// ---------------------------------------------------------------------------

std::vector<std::vector<int>> reachable_sccs(
    const std::vector<std::vector<int>>& graph, int v0) {
  int n = static_cast<int>(graph.size());
  std::vector<bool> reach(n, false);
  std::vector<int> stack{v0};
  reach[v0] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : graph[v])
      if (!reach[w]) {
        reach[w] = true;
        stack.push_back(w);
      }
  }
  // iterative Tarjan over the reachable part
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on(n, false);
  std::vector<int> st;
  int next_index = 0, ncomp = 0;
  std::vector<std::vector<int>> comps;
  struct Frame {
    int v;
    size_t ei;
  };
  for (int root = 0; root < n; ++root) {
    if (!reach[root] || index[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    st.push_back(root);
    on[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.ei < graph[f.v].size()) {
        int w = graph[f.v][f.ei++];
        if (!reach[w]) continue;
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          st.push_back(w);
          on[w] = true;
          call.push_back({w, 0});
        } else if (on[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        int v = f.v;
        call.pop_back();
        if (!call.empty())
          low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == index[v]) {
          std::vector<int> c;
          for (;;) {
            int w = st.back();
            st.pop_back();
            on[w] = false;
            comp[w] = ncomp;
            c.push_back(w);
            if (w == v) break;
          }
          std::sort(c.begin(), c.end());
          comps.push_back(std::move(c));
          ++ncomp;
        }
      }
    }
  }
  // keep only components containing an edge
  std::vector<std::vector<int>> out;
  for (const auto& c : comps) {
    bool has_edge = false;
    for (int v : c) {
      for (int w : graph[v])
        if (comp[w] == comp[v]) {
          has_edge = true;
          break;
        }
      if (has_edge) break;
    }
    if (has_edge) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Johnson-style enumeration of the simple cycles inside one SCC.
struct CycleEnum {
  const std::vector<std::vector<int>>& graph;
  std::set<int> members;
  long cap;
  std::vector<std::vector<int>> cycles;
  std::vector<int> path;
  std::set<int> on_path;
  int start = 0;

  void dfs(int v) {
    path.push_back(v);
    on_path.insert(v);
    for (int w : graph[v]) {
      if (!members.count(w) || w < start) continue;
      if (w == start) {
        if (static_cast<long>(cycles.size()) >= cap)
          throw ResourceError("simple-cycle enumeration budget exceeded");
        cycles.push_back(path);
      } else if (!on_path.count(w)) {
        dfs(w);
      }
    }
    on_path.erase(v);
    path.pop_back();
  }
};

}  // namespace

std::vector<std::vector<int>> simple_cycles(
    const std::vector<std::vector<int>>& graph, const std::vector<int>& scc,
    long cap) {
  CycleEnum e{graph, std::set<int>(scc.begin(), scc.end()), cap, {}, {}, {}, 0};
  // every simple cycle is found once, rooted at its smallest vertex
  for (int v : scc) {
    e.start = v;
    e.dfs(v);
  }
  return e.cycles;
}

RatVec cycle_average(const std::vector<int>& cycle,
                     const std::vector<RatVec>& weights) {
  if (cycle.empty()) throw std::invalid_argument("empty cycle");
  size_t d = weights[cycle[0]].size();
  RatVec sum(d, Rat(0));
  for (int v : cycle)
    for (size_t i = 0; i < d; ++i) sum[i] += weights[v][i];
  Rat len(static_cast<long>(cycle.size()));
  for (auto& x : sum) x /= len;
  return sum;
}

// ---------------------------------------------------------------------------
// Value sets
// ---------------------------------------------------------------------------

namespace {

// Player-2 nodes of the sequentialisation that share an arena state and a
// successor set are interchangeable: a strategy that picks different
// successors for two such nodes produces the same reachable subgraphs as
// some node-uniform strategy (reroute every visit through one fixed choice),
// so the intersection over node-uniform strategies equals the intersection
// over all memoryless strategies. Enumeration is therefore done per class.
struct ClassInfo {
  std::vector<int> nodes;      // v2 node offsets
  std::vector<int> choices;    // common successor list
};

struct StrategySearch {
  const MMPG& m;
  int start;
  const ValueBudget& budget;
  std::vector<int> class_of;            // per v2 offset
  std::vector<ClassInfo> classes;
  std::vector<int> assign;              // per class: chosen successor or -1
  long leaves = 0;

  // Per-leaf callback: receives the subgame successor function.
  std::function<void(const std::vector<std::vector<int>>&)> on_leaf;
  bool stop = false;

  explicit StrategySearch(const MMPG& mm, int s, const ValueBudget& b)
      : m(mm), start(s), budget(b) {
    std::map<std::pair<int, std::vector<int>>, int> key_to_class;
    class_of.resize(m.v2.size());
    for (size_t k = 0; k < m.v2.size(); ++k) {
      auto key = std::make_pair(m.v2[k].first, m.succ[m.n1 + k]);
      auto it = key_to_class.find(key);
      if (it == key_to_class.end()) {
        it = key_to_class.emplace(key, static_cast<int>(classes.size())).first;
        classes.push_back({{}, m.succ[m.n1 + k]});
      }
      class_of[k] = it->second;
      classes[it->second].nodes.push_back(static_cast<int>(k));
    }
    assign.assign(classes.size(), -1);
  }

  // Finds the first unassigned class reachable from `start` under the
  // current partial assignment; -1 when the assignment already fixes the
  // whole reachable subgraph.
  int first_open_class() const {
    std::vector<bool> seen(m.num_nodes(), false);
    std::vector<int> stack{start};
    seen[start] = true;
    int open = -1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (m.is_v1(v)) {
        for (int w : m.succ[v])
          if (!seen[w]) {
            seen[w] = true;
            stack.push_back(w);
          }
      } else {
        int cls = class_of[v - m.n1];
        if (assign[cls] < 0) {
          if (open < 0 || cls < open) open = cls;
          continue;
        }
        int w = assign[cls];
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    return open;
  }

  std::vector<std::vector<int>> leaf_subgame() const {
    std::vector<std::vector<int>> succ = m.succ;
    for (size_t k = 0; k < m.v2.size(); ++k) {
      int a = assign[class_of[k]];
      succ[m.n1 + k] = {a >= 0 ? a : m.succ[m.n1 + k][0]};
    }
    return succ;
  }

  void run() { dfs(); }

  void dfs() {
    if (stop) return;
    int cls = first_open_class();
    if (cls < 0) {
      if (++leaves > budget.strategy_cap)
        throw ResourceError("player-2 strategy enumeration budget exceeded");
      on_leaf(leaf_subgame());
      return;
    }
    for (int choice : classes[cls].choices) {
      assign[cls] = choice;
      dfs();
      if (stop) break;
    }
    assign[cls] = -1;
  }
};

struct HullCache {
  std::map<std::string, std::pair<Polyhedron, std::vector<RatVec>>> by_gens;

  std::pair<Polyhedron, std::vector<RatVec>> hull(std::vector<RatVec> pts) {
    std::sort(pts.begin(), pts.end(), [](const RatVec& a, const RatVec& b) {
      return vec_str(a) < vec_str(b);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::string key;
    for (const auto& p : pts) key += vec_str(p) + ";";
    auto it = by_gens.find(key);
    if (it == by_gens.end())
      it = by_gens.emplace(key, std::make_pair(hrep_down_conv(pts), pts)).first;
    return it->second;
  }
};

// Keeps only the componentwise-maximal points; for downward-closed hulls
// and diagonal-margin queries the dominated generators are redundant.
std::vector<RatVec> maximal_points(std::vector<RatVec> pts) {
  std::sort(pts.begin(), pts.end(), [](const RatVec& a, const RatVec& b) {
    return vec_str(a) < vec_str(b);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<RatVec> keep;
  for (const auto& p : pts) {
    bool covered = false;
    for (const auto& q : pts)
      if (&p != &q && leq_componentwise(p, q) && !(q == p)) {
        covered = true;
        break;
      }
    if (!covered) keep.push_back(p);
  }
  return keep;
}

// Per-strategy cycle structure: one set of maximal cycle-average points per
// reachable SCC. `fn` returning false stops the enumeration. Unions with
// identical point structure are reported once.
void for_each_strategy_points(
    const Game& g, const Coalition& c, int s, const ValueBudget& budget,
    const std::function<bool(const std::vector<std::vector<RatVec>>&)>& fn) {
  MMPG m = sequentialise(g, c);
  StrategySearch search(m, s, budget);
  std::set<std::string> seen;
  search.on_leaf = [&](const std::vector<std::vector<int>>& succ) {
    std::vector<std::vector<RatVec>> sets;
    std::vector<std::string> keys;
    for (const auto& scc : reachable_sccs(succ, s)) {
      std::vector<RatVec> pts;
      for (const auto& cyc : simple_cycles(succ, scc, budget.cycle_cap))
        pts.push_back(cycle_average(cyc, m.weights));
      sets.push_back(maximal_points(std::move(pts)));
      std::string k;
      for (const auto& p : sets.back()) k += vec_str(p) + ";";
      keys.push_back(std::move(k));
    }
    std::sort(keys.begin(), keys.end());
    std::string key;
    for (const auto& k : keys) key += k + "|";
    if (!seen.insert(key).second) return;
    if (!fn(sets)) search.stop = true;
  };
  search.run();
}

// max t s.t. x + t*1 lies under some convex combination of `pts`.
}  // namespace

Rat margin_of_points(const std::vector<RatVec>& pts, const RatVec& x) {
  size_t k = pts.size(), d = x.size();
  // cheap upper bound: no convex combination beats the coordinate-wise maxima
  std::optional<Rat> bound;
  for (size_t i = 0; i < d; ++i) {
    Rat m = pts[0][i];
    for (size_t p = 1; p < k; ++p)
      if (pts[p][i] > m) m = pts[p][i];
    m -= x[i];
    if (!bound || m < *bound) bound = m;
  }
  if (bound && *bound < 0) return *bound;
  // vars: a_0..a_{k-1}, t
  Polyhedron lp(static_cast<int>(k + 1));
  for (size_t p = 0; p < k; ++p) {
    RatVec a(k + 1, Rat(0));
    a[p] = -1;
    lp.ineqs.push_back({a, Rat(0)});
  }
  {
    RatVec a(k + 1, Rat(0));
    for (size_t p = 0; p < k; ++p) a[p] = 1;
    lp.eqs.push_back({a, Rat(1)});
  }
  for (size_t i = 0; i < d; ++i) {
    RatVec a(k + 1, Rat(0));
    for (size_t p = 0; p < k; ++p) a[p] = -pts[p][i];
    a[k] = 1;
    lp.ineqs.push_back({a, -x[i]});
  }
  RatVec obj(k + 1, Rat(0));
  obj[k] = 1;
  LpResult r = lp_solve(obj, lp);
  if (r.status != LpStatus::Optimum)
    throw std::logic_error("margin LP must have a finite optimum");
  return r.value;
}

std::vector<std::vector<Polyhedron>> strategy_unions(const Game& g,
                                                     const Coalition& c, int s,
                                                     const ValueBudget& budget) {
  HullCache cache;
  std::vector<std::vector<Polyhedron>> out;
  for_each_strategy_points(g, c, s, budget,
                           [&](const std::vector<std::vector<RatVec>>& sets) {
                             std::vector<Polyhedron> hulls;
                             for (const auto& pts : sets)
                               hulls.push_back(cache.hull(pts).first);
                             out.push_back(std::move(hulls));
                             return true;
                           });
  return out;
}

ValueSet value_set(const Game& g, const Coalition& c, int s,
                   const ValueBudget& budget) {
  int dim = static_cast<int>(c.members.size());
  std::vector<PolyUnion> unions;
  for (auto& hulls : strategy_unions(g, c, s, budget)) {
    PolyUnion u(dim);
    u.parts = std::move(hulls);
    unions.push_back(std::move(u));
  }
  ValueSet out;
  out.coalition = c;
  out.start = s;
  if (unions.empty()) {
    out.hull = PolyUnion(dim);
    return out;
  }
  out.hull = distribute(unions);
  for (const auto& part : out.hull.parts) out.gens.push_back(enumerate_vertices(part));
  return out;
}

std::vector<std::vector<RatVec>> achievable_points(const Game& g,
                                                   const Coalition& c, int s,
                                                   const ValueBudget& budget) {
  std::vector<std::vector<RatVec>> out;
  for_each_strategy_points(g, c, s, budget,
                           [&](const std::vector<std::vector<RatVec>>& sets) {
                             out = sets;
                             return false;
                           });
  return out;
}

bool can_enforce(const Game& g, const Coalition& c, int s, const RatVec& x,
                 const ValueBudget& budget) {
  bool ok = true;
  for_each_strategy_points(g, c, s, budget,
                           [&](const std::vector<std::vector<RatVec>>& sets) {
                             for (const auto& pts : sets)
                               if (down_conv_membership(pts, x)) return true;
                             ok = false;
                             return false;
                           });
  return ok;
}

Rat enforce_margin(const Game& g, const Coalition& c, int s, const RatVec& x,
                   const ValueBudget& budget, bool exact) {
  // The value set is an intersection of downward-closed unions, and the
  // diagonal direction makes membership monotone in t, so the margin of the
  // intersection is the minimum of the per-strategy margins.
  std::optional<Rat> best;
  for_each_strategy_points(
      g, c, s, budget, [&](const std::vector<std::vector<RatVec>>& sets) {
        std::optional<Rat> leaf;
        for (const auto& pts : sets) {
          Rat t = margin_of_points(pts, x);
          if (!leaf || t > *leaf) leaf = t;
        }
        if (!leaf)
          throw std::logic_error("adversary strategy with no reachable cycle");
        if (!best || *leaf < *best) best = *leaf;
        return exact || *best > 0;
      });
  if (!best) throw std::logic_error("no adversary strategies enumerated");
  return *best;
}

std::optional<RatVec> strictly_improvable(const Game& g, const Coalition& c,
                                          int s, const RatVec& x,
                                          const ValueBudget& budget) {
  // the non-exact mode stops at the first adversary strategy pinning the
  // margin at or below zero; when it stays positive the minimum is exact
  Rat t = enforce_margin(g, c, s, x, budget, /*exact=*/false);
  if (!(t > 0)) return std::nullopt;
  RatVec z = x;
  for (auto& zi : z) zi += t;
  return z;
}

ImprovabilityCheck strictly_improvable_pinned(const Game& g, const Coalition& c,
                                              int s, const RatVec& x,
                                              const ValueBudget& budget) {
  ImprovabilityCheck out;
  std::optional<Rat> best;
  for_each_strategy_points(
      g, c, s, budget, [&](const std::vector<std::vector<RatVec>>& sets) {
        std::optional<Rat> leaf;
        for (const auto& pts : sets) {
          Rat t = margin_of_points(pts, x);
          if (!leaf || t > *leaf) leaf = t;
        }
        if (!leaf)
          throw std::logic_error("adversary strategy with no reachable cycle");
        if (!best || *leaf < *best) best = *leaf;
        if (*leaf > 0) return true;
        out.pin = sets;  // one pinning strategy refutes improvability for good
        return false;
      });
  if (!best) throw std::logic_error("no adversary strategies enumerated");
  if (out.pin.empty() && *best > 0) {
    RatVec z = x;
    for (auto& zi : z) zi += *best;
    out.improvement = std::move(z);
  }
  return out;
}

}  // namespace mpgcore
