// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "mpgcore/decisions.hpp"
#include "mpgcore/oracle.hpp"
#include "mpgcore/payoff.hpp"
#include "mpgcore/reductions.hpp"

using namespace mpgcore;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  if (!in.good()) throw std::runtime_error("missing fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Check {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!note.empty()) note += "; ";
      note += what;
    }
  }
};

RatVec rv(std::vector<Rat> v) { return v; }

// ---------- witness re-verification helpers (criterion 8 collects these) ----

std::vector<std::string> witness_failures;

void verify_dominated_witness(const Game& g, int s, const RatVec& base,
                              const Verdict& v, const std::string& tag) {
  if (!v.answer) return;
  if (!v.coalition || !v.improvement) {
    witness_failures.push_back(tag + ": yes without witness");
    return;
  }
  const auto& mem = v.coalition->members;
  if (v.improvement->size() != mem.size()) {
    witness_failures.push_back(tag + ": witness dimension");
    return;
  }
  for (size_t i = 0; i < mem.size(); ++i)
    if (!((*v.improvement)[i] > base[mem[i]])) {
      witness_failures.push_back(tag + ": improvement not strict");
      return;
    }
  if (!can_enforce(g, *v.coalition, s, *v.improvement))
    witness_failures.push_back(tag + ": improvement not enforceable");
}

// Algebraic re-check of a run witness: edges exist, the circulation is a
// probability flow, and its weighted average reproduces the payoff.
void verify_run_witness(const Game& g, const Verdict& v,
                        const std::string& tag) {
  if (!v.answer) return;
  if (!v.payoff || !v.circulation || !v.state_set) {
    witness_failures.push_back(tag + ": yes without run witness");
    return;
  }
  int n = g.num_players();
  Rat total(0);
  std::map<int, Rat> in, out;
  RatVec avg(n, Rat(0));
  for (const auto& [src, dst, z] : *v.circulation) {
    if (z < Rat(0)) witness_failures.push_back(tag + ": negative flow");
    if (z == Rat(0)) continue;
    bool edge = false;
    for (long pi = 0; pi < g.profile_count() && !edge; ++pi)
      edge = g.transitions[src][pi] == dst;
    if (!edge) witness_failures.push_back(tag + ": phantom edge");
    if (!v.state_set->count(src) || !v.state_set->count(dst))
      witness_failures.push_back(tag + ": flow leaves the witness set");
    total += z;
    out[src] += z;
    in[dst] += z;
    for (int i = 0; i < n; ++i) avg[i] += z * Rat(g.weights[src][i]);
  }
  if (total != Rat(1)) witness_failures.push_back(tag + ": flow sum != 1");
  for (const auto& [s, f] : out)
    if (in[s] != f) witness_failures.push_back(tag + ": flow not conserved");
  for (int i = 0; i < n; ++i)
    if (avg[i] < (*v.payoff)[i])
      witness_failures.push_back(tag + ": circulation below claimed payoff");
}

// ---------- criteria 1-4, 7 ------------------------------------------------

Check criterion1() {
  Check c;
  Game g = parse_game(slurp("example1.game"));
  StrategyProfile alt = parse_profile(slurp("alternating.profile"), g);
  StrategyProfile bad = parse_profile(slurp("badne.profile"), g);
  c.require(compute_payoff(g, alt) == rv({Rat(1, 4), Rat(1, 4)}),
            "alternating payoff != (1/4,1/4)");
  c.require(compute_payoff(g, bad) == rv({Rat(0), Rat(0)}),
            "bad-equilibrium payoff != (0,0)");
  Verdict v = exists_beneficial_deviation(g, bad);
  c.require(v.answer, "no deviation found from the bad equilibrium");
  verify_dominated_witness(g, 0, compute_payoff(g, bad), v, "c1 deviation");
  return c;
}

Check criterion2() {
  Check c;
  Game g = parse_game(slurp("example2.game"));
  Coalition c23;
  c23.members = {1, 2};
  ValueSet vs = value_set(g, c23, g.state_index("s"));
  c.require(vs.hull.parts.size() == 1, "expected a single polyhedron");
  if (vs.hull.parts.size() == 1) {
    Polyhedron want(2);
    want.ineqs.push_back({{Rat(1), Rat(0)}, Rat(2)});  // x2 <= 2
    want.ineqs.push_back({{Rat(0), Rat(1)}, Rat(1)});  // x3 <= 1
    c.require(poly_contains_poly(want, vs.hull.parts[0]) &&
                  poly_contains_poly(vs.hull.parts[0], want),
              "value set != {x2 <= 2, x3 <= 1}");
  }
  return c;
}

Check criterion3() {
  Check c;
  Game g = parse_game(slurp("example2.game"));
  c.require(!core_nonempty(g).answer, "original weights: core not empty");
  Game gm = parse_game(slurp("example2_mod.game"));
  Verdict v = core_nonempty(gm);
  c.require(v.answer, "modified weights: core empty");
  c.require(v.payoff && *v.payoff == rv({Rat(1), Rat(1), Rat(1)}),
            "witness payoff != (1,1,1)");
  verify_run_witness(gm, v, "c3 non-emptiness");
  if (v.answer && v.payoff) {
    Coalition grand;
    grand.members = {0, 1, 2};
    if (dominated(gm, 0, *v.payoff).answer)
      witness_failures.push_back("c3: witness payoff is dominated");
    if (!can_enforce(gm, grand, 0, *v.payoff))
      witness_failures.push_back("c3: witness payoff not enforceable");
  }
  return c;
}

Check criterion4() {
  Check c;
  Game pg = parse_game(slurp("ll_core.game"));
  StrategyProfile ll = parse_profile(slurp("ll.profile"), pg);
  c.require(membership(pg, ll).answer, "constant-(L,L) not in the core");
  Game g2 = parse_game(slurp("example2.game"));
  c.require(!core_nonempty(g2).answer, "empty-core game reported non-empty");
  return c;
}

Check criterion7() {
  Check c;
  Gr1Spec spec = parse_gr1("true -> GF at_s");
  Game gm = parse_game(slurp("example2_mod.game"));
  Verdict v = e_core_gr1(gm, spec);
  c.require(v.answer, "modified weights: no core run satisfies GF at_s");
  int s = gm.state_index("s");
  bool stays = v.lasso.has_value();
  if (stays)
    for (int st : v.lasso->cycle) stays = stays && st == s;
  c.require(stays, "witness lasso does not stay in s");
  verify_run_witness(gm, v, "c7 e-core");

  Game g2 = parse_game(slurp("example2.game"));
  c.require(!e_core_gr1(g2, spec).answer, "original weights: e-core yes");
  c.require(!e_core_gr1(g2, parse_gr1("true -> GF at_t")).answer,
            "original weights: e-core yes under GF at_t");
  return c;
}

// ---------- criterion 5: exhaustive two-block round-trip --------------------

struct LitTable {
  std::vector<QbfLit> lits;
  std::vector<std::vector<bool>> clash;  // same variable, opposite sign
};

LitTable make_lits(int p, int q, int t) {
  LitTable lt;
  for (int i = 1; i <= p; ++i)
    for (int n = 0; n < 2; ++n) lt.lits.push_back({'x', i, n == 1});
  for (int i = 1; i <= q; ++i)
    for (int n = 0; n < 2; ++n) lt.lits.push_back({'y', i, n == 1});
  for (int i = 1; i <= t; ++i)
    for (int n = 0; n < 2; ++n) lt.lits.push_back({'z', i, n == 1});
  size_t L = lt.lits.size();
  lt.clash.assign(L, std::vector<bool>(L, false));
  for (size_t a = 0; a < L; ++a)
    for (size_t b = 0; b < L; ++b)
      lt.clash[a][b] = lt.lits[a].block == lt.lits[b].block &&
                       lt.lits[a].idx == lt.lits[b].idx &&
                       lt.lits[a].neg != lt.lits[b].neg;
  return lt;
}

// Sorted literal-id triples without a clashing pair.
std::vector<std::array<int, 3>> valid_clauses(const LitTable& lt) {
  int L = static_cast<int>(lt.lits.size());
  std::vector<std::array<int, 3>> out;
  for (int i = 0; i < L; ++i)
    for (int j = i; j < L; ++j)
      for (int k = j; k < L; ++k)
        if (!lt.clash[i][j] && !lt.clash[i][k] && !lt.clash[j][k])
          out.push_back({i, j, k});
  return out;
}

// Literal-id permutations induced by renaming variables within each block
// and flipping the polarity of individual variables; both preserve the
// quantifier structure and hence the truth value, and act on the generated
// game as a renaming of players and states.
std::vector<std::vector<int>> symmetry_maps(const LitTable& lt, int p, int q) {
  auto perms = [](int n) {
    std::vector<std::vector<int>> ps;
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    do ps.push_back(idx);
    while (std::next_permutation(idx.begin(), idx.end()));
    return ps;
  };
  std::vector<std::vector<int>> maps;
  for (const auto& px : perms(p))
    for (const auto& py : perms(q))
      for (int fx = 0; fx < (1 << p); ++fx)
        for (int fy = 0; fy < (1 << q); ++fy) {
          std::vector<int> m(lt.lits.size());
          for (size_t a = 0; a < lt.lits.size(); ++a) {
            QbfLit l = lt.lits[a];
            int base, ni;
            if (l.block == 'x') {
              base = 0;
              ni = px[l.idx - 1];
              l.neg = l.neg ^ ((fx >> ni) & 1);
            } else {
              base = 2 * p;
              ni = py[l.idx - 1];
              l.neg = l.neg ^ ((fy >> ni) & 1);
            }
            m[a] = base + 2 * ni + (l.neg ? 1 : 0);
          }
          maps.push_back(m);
        }
  return maps;
}

Check criterion5() {
  Check c;
  long solved = 0, mismatches = 0;
  for (int p = 1; p <= 2; ++p)
    for (int q = 1; q <= 2; ++q) {
      LitTable lt = make_lits(p, q, 0);
      auto clauses = valid_clauses(lt);
      int V = static_cast<int>(clauses.size());
      std::map<std::array<int, 3>, int> clause_id;
      for (int i = 0; i < V; ++i) clause_id[clauses[i]] = i;
      auto maps = symmetry_maps(lt, p, q);

      auto canon = [&](std::vector<int> cs) {
        uint64_t best = ~0ull;
        for (const auto& m : maps) {
          std::vector<int> mapped;
          for (int ci : cs) {
            std::array<int, 3> t = {m[clauses[ci][0]], m[clauses[ci][1]],
                                    m[clauses[ci][2]]};
            std::sort(t.begin(), t.end());
            mapped.push_back(clause_id.at(t));
          }
          std::sort(mapped.begin(), mapped.end());
          uint64_t key = 0;
          for (int ci : mapped) key = (key << 16) | (ci + 1);
          best = std::min(best, key);
        }
        return best;
      };

      std::set<uint64_t> seen;
      auto handle = [&](const std::vector<int>& cs) {
        if (!seen.insert(canon(cs)).second) return;
        Qbf2Formula f;
        f.p = p;
        f.q = q;
        for (int ci : cs)
          f.clauses.push_back({lt.lits[clauses[ci][0]],
                               lt.lits[clauses[ci][1]],
                               lt.lits[clauses[ci][2]]});
        DominatedInstance inst = gen_qsat2_dominated(f);
        int s = inst.game.state_index(inst.state);
        Verdict v = dominated(inst.game, s, inst.query);
        ++solved;
        if (v.answer != qbf_eval(f)) ++mismatches;
        verify_dominated_witness(inst.game, s, inst.query, v, "c5 instance");
      };

      for (int a = 0; a < V; ++a) {
        handle({a});
        for (int b = a + 1; b < V; ++b) {
          handle({a, b});
          for (int d = b + 1; d < V; ++d) handle({a, b, d});
        }
      }
    }

  // the worked example: true, hence a yes-instance
  Qbf2Formula phi = parse_qbf2(
      R"({"p":2,"q":2,"clauses":[["x1","x2","y1"],["x1","!x2","!y2"],["x1","x2","!y1"]]})");
  DominatedInstance pi = gen_qsat2_dominated(phi);
  Verdict pv = dominated(pi.game, pi.game.state_index(pi.state), pi.query);
  c.require(pv.answer, "worked formula not reported dominated");

  c.require(mismatches == 0,
            std::to_string(mismatches) + " mismatches over " +
                std::to_string(solved) + " canonical instances");
  c.note = "(" + std::to_string(solved) + " canonical instances)";
  if (mismatches) c.note += ", " + std::to_string(mismatches) + " mismatches";
  return c;
}

// ---------- criterion 6: sampled three-block round-trip ---------------------

Check criterion6() {
  Check c;
  std::mt19937 rng(20260826);
  long mismatches = 0, total = 50;
  for (long k = 0; k < total; ++k) {
    // player count is 2p+2t+5; keep p+t <= 3 so instances stay desk-scale
    static const int pt[4][2] = {{1, 1}, {1, 1}, {1, 2}, {2, 1}};
    const int* d = pt[rng() % 4];
    int p = d[0], t = d[1], q = 1 + rng() % 2, r = 1 + rng() % 2;
    LitTable lt = make_lits(p, q, t);
    Qbf3Formula f;
    f.p = p;
    f.q = q;
    f.t = t;
    for (int ci = 0; ci < r; ++ci) {
      QbfClause cl;
      while (true) {
        int a = rng() % lt.lits.size(), b = rng() % lt.lits.size(),
            e = rng() % lt.lits.size();
        if (lt.clash[a][b] || lt.clash[a][e] || lt.clash[b][e]) continue;
        cl = {lt.lits[a], lt.lits[b], lt.lits[e]};
        break;
      }
      f.clauses.push_back(cl);
    }
    Game g = gen_qsat3_nonemptiness(f);
    Verdict v = core_nonempty(g);
    if (v.answer != qbf_eval(f)) ++mismatches;
    verify_run_witness(g, v, "c6 sample");
  }
  c.require(mismatches == 0,
            std::to_string(mismatches) + "/" + std::to_string(total) +
                " samples disagree with the formula value");

  // the worked three-block formula: true, core non-empty
  Qbf3Formula psi = parse_qbf3(
      R"({"p":2,"q":1,"t":1,"clauses":[["x1","x2","y1"],["!x1","y1","z1"],["!x2","!y1","!z1"]]})");
  Game gpsi = gen_qsat3_nonemptiness(psi);
  Verdict vp = core_nonempty(gpsi);
  c.require(vp.answer, "worked formula: core empty");
  verify_run_witness(gpsi, vp, "c6 worked formula");
  if (vp.answer && vp.payoff) {
    Coalition grand;
    for (int i = 0; i < gpsi.num_players(); ++i) grand.members.push_back(i);
    if (dominated(gpsi, 0, *vp.payoff).answer)
      witness_failures.push_back("c6: worked-formula witness dominated");
    if (!can_enforce(gpsi, grand, 0, *vp.payoff))
      witness_failures.push_back("c6: worked-formula witness unenforceable");
  }

  c.require(!core_nonempty(sink_gadget_game()).answer,
            "bare sink component: core not empty");
  return c;
}

// ---------- criterion 8: property suites ------------------------------------

Rat rand_rat(std::mt19937& rng, int max_num, int max_den) {
  return Rat(static_cast<long>(rng() % (max_num + 1)),
             static_cast<long>(1 + rng() % max_den));
}

Check criterion8() {
  Check c;
  std::mt19937 rng(17);
  struct Fx { std::string name; Game g; };
  std::vector<Fx> fixtures;
  for (const char* n : {"example1.game", "example2.game", "example2_mod.game",
                        "ll_core.game"})
    fixtures.push_back({n, parse_game(slurp(n))});

  // downward closure of every computed value set, 100 decreases per fixture
  for (auto& fx : fixtures) {
    std::vector<ValueSet> sets;
    std::vector<Coalition> cs;
    int n = fx.g.num_players();
    for (int mask = 1; mask < (1 << n); ++mask) {
      Coalition co;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) co.members.push_back(i);
      sets.push_back(value_set(fx.g, co, 0));
      cs.push_back(co);
    }
    for (int it = 0; it < 100; ++it) {
      size_t j = rng() % sets.size();
      const ValueSet& vs = sets[j];
      std::vector<RatVec> pts;
      for (const auto& part : vs.gens)
        for (const auto& pt : part) pts.push_back(pt);
      if (pts.empty()) continue;
      RatVec x = pts[rng() % pts.size()];
      for (auto& xi : x) xi -= rand_rat(rng, 8, 4);
      if (!vs.hull.contains(x))
        c.require(false, fx.name + ": value set not downward closed");
    }
  }

  // coalition values embed into the grand coalition's projection
  for (auto& fx : fixtures) {
    int n = fx.g.num_players();
    Coalition grand;
    for (int i = 0; i < n; ++i) grand.members.push_back(i);
    ValueSet gv = value_set(fx.g, grand, 0);
    for (int mask = 1; mask < (1 << n) - 1; ++mask) {
      Coalition co;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) co.members.push_back(i);
      std::vector<Polyhedron> proj;
      for (const auto& part : gv.hull.parts)
        proj.push_back(project(part, co.members));
      ValueSet cv = value_set(fx.g, co, 0);
      for (const auto& part : cv.hull.parts)
        for (const RatVec& vtx : enumerate_vertices(part)) {
          bool in = false;
          for (const auto& pp : proj) in = in || pp.contains(vtx);
          if (!in)
            c.require(false, fx.name + ": coalition value outside projection");
        }
    }
  }

  // membership = no beneficial deviation, on all fixture profiles
  struct Pr { const char* game; const char* prof; };
  for (const Pr& pr : std::initializer_list<Pr>{
           {"example1.game", "alternating.profile"},
           {"example1.game", "badne.profile"},
           {"example2.game", "t_forcing.profile"},
           {"example2_mod.game", "stay.profile"},
           {"ll_core.game", "ll.profile"}}) {
    Game g = parse_game(slurp(pr.game));
    StrategyProfile p = parse_profile(slurp(pr.prof), g);
    if (membership(g, p).answer == exists_beneficial_deviation(g, p).answer)
      c.require(false, std::string(pr.prof) + ": duality violated");
  }

  // the not-dominated verdict is upward closed
  {
    Game gm = parse_game(slurp("example2_mod.game"));
    RatVec base = rv({Rat(1), Rat(1), Rat(1)});
    if (dominated(gm, 0, base).answer)
      c.require(false, "(1,1,1) dominated on modified weights");
    for (int it = 0; it < 100; ++it) {
      RatVec x = base;
      for (auto& xi : x) xi += rand_rat(rng, 8, 4);
      if (dominated(gm, 0, x).answer) {
        c.require(false, "dominated above a non-dominated point");
        break;
      }
    }
  }

  c.require(witness_failures.empty(),
            witness_failures.empty() ? "" : witness_failures.front());
  if (!witness_failures.empty())
    c.note += " (+" + std::to_string(witness_failures.size() - 1) + " more)";
  return c;
}

}  // namespace

int main() {
  struct Crit { const char* name; std::function<Check()> run; };
  std::vector<Crit> crits = {
      {"two-player cycle fixture payoffs and deviation", criterion1},
      {"coalition {2,3} value polyhedron", criterion2},
      {"three-player core emptiness and (1,1,1) witness", criterion3},
      {"constant-(L,L) membership and empty-core fixture", criterion4},
      {"two-block formula round-trip (exhaustive, canonical)", criterion5},
      {"three-block formula round-trip (sampled)", criterion6},
      {"GR(1) existential core on the three-player fixtures", criterion7},
      {"property suites (closure, inclusion, duality, witnesses)", criterion8},
      {"complexity-class claims excluded by design", []() { return Check{}; }},
  };
  bool all = true;
  for (size_t i = 0; i < crits.size(); ++i) {
    Check c;
    try {
      c = crits[i].run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.note = std::string("exception: ") + e.what();
    }
    all = all && c.ok;
    std::cout << "criterion " << (i + 1) << " (" << crits[i].name
              << "): " << (c.ok ? "PASS" : "FAIL");
    if (!c.note.empty()) std::cout << " " << c.note;
    std::cout << std::endl;
  }
  return all ? 0 : 1;
}
