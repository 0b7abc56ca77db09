#include "mpgcore/reductions.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include <json.hpp>

namespace mpgcore {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("reduction: " + msg);
}

int block_count(char block, int p, int q, int t) {
  switch (block) {
    case 'x': return p;
    case 'y': return q;
    case 'z': return t;
  }
  return 0;
}

bool clause_ok(const QbfClause& c) {
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      if (c[a].block == c[b].block && c[a].idx == c[b].idx &&
          c[a].neg != c[b].neg)
        return false;
  return true;
}

bool lit_true(const QbfLit& l, unsigned x, unsigned y, unsigned z) {
  unsigned bits = l.block == 'x' ? x : (l.block == 'y' ? y : z);
  bool v = (bits >> (l.idx - 1)) & 1u;
  return v != l.neg;
}

// True when some clause mixes a variable of `block` with its negation across
// the two clauses (used to forbid moves between incompatible clauses).
bool clash(const QbfClause& a, const QbfClause& b, char block) {
  for (const auto& la : a) {
    if (la.block != block) continue;
    for (const auto& lb : b)
      if (lb.block == block && lb.idx == la.idx && lb.neg != la.neg)
        return true;
  }
  return false;
}

bool clause_has_var(const QbfClause& c, char block, int idx) {
  for (const auto& l : c)
    if (l.block == block && l.idx == idx) return true;
  return false;
}

// Shared scaffolding for the formula games: states are declared with a weight
// row and a successor rule, then the full transition table is materialised.
struct ArenaBuilder {
  Game g;
  // per state: controller player (or -1), ordered successor names
  std::vector<int> controller;
  std::vector<std::vector<std::string>> succs;

  int add_state(const std::string& name, std::vector<long> w, int ctrl,
                std::vector<std::string> out) {
    g.states.push_back(name);
    g.labels.emplace_back();
    g.weights.push_back(std::move(w));
    controller.push_back(ctrl);
    succs.push_back(std::move(out));
    return g.num_states() - 1;
  }

  // Default finalisation: the controller's action index picks a successor,
  // clamped to the out-degree. States needing a joint rule are finalised by
  // the caller afterwards.
  void finalise() {
    int n = g.num_players();
    g.actions.assign(n, {});
    std::vector<size_t> deg(n, 1);
    for (int s = 0; s < g.num_states(); ++s)
      if (controller[s] >= 0)
        deg[controller[s]] = std::max(deg[controller[s]], succs[s].size());
    for (int i = 0; i < n; ++i)
      for (size_t a = 0; a < deg[i]; ++a)
        g.actions[i].push_back("a" + std::to_string(a));

    long np = g.profile_count();
    g.transitions.assign(g.num_states(), std::vector<int>(np, -1));
    for (int s = 0; s < g.num_states(); ++s) {
      int ctrl = std::max(controller[s], 0);
      for (long pi = 0; pi < np; ++pi) {
        auto acts = g.profile_actions(pi);
        size_t k = std::min<size_t>(acts[ctrl], succs[s].size() - 1);
        g.transitions[s][pi] = g.state_index(succs[s][k]);
      }
    }
  }
};

}  // namespace

bool well_formed(const Qbf2Formula& f) {
  if (f.p < 1 || f.q < 0 || f.clauses.empty()) return false;
  for (const auto& c : f.clauses) {
    if (!clause_ok(c)) return false;
    for (const auto& l : c)
      if ((l.block != 'x' && l.block != 'y') || l.idx < 1 ||
          l.idx > block_count(l.block, f.p, f.q, 0))
        return false;
  }
  return true;
}

bool well_formed(const Qbf3Formula& f) {
  if (f.p < 1 || f.q < 0 || f.t < 0 || f.clauses.empty()) return false;
  for (const auto& c : f.clauses) {
    if (!clause_ok(c)) return false;
    for (const auto& l : c)
      if ((l.block != 'x' && l.block != 'y' && l.block != 'z') || l.idx < 1 ||
          l.idx > block_count(l.block, f.p, f.q, f.t))
        return false;
  }
  return true;
}

bool qbf_eval(const Qbf2Formula& f) {
  if (f.p > 16 || f.q > 16) fail("formula too large for evaluation");
  for (unsigned x = 0; x < (1u << f.p); ++x) {
    bool all_y = true;
    for (unsigned y = 0; y < (1u << f.q) && all_y; ++y) {
      bool some_clause = false;
      for (const auto& c : f.clauses) {
        bool sat = true;
        for (const auto& l : c) sat = sat && lit_true(l, x, y, 0);
        if (sat) { some_clause = true; break; }
      }
      all_y = some_clause;
    }
    if (all_y) return true;
  }
  return false;
}

bool qbf_eval(const Qbf3Formula& f) {
  if (f.p > 16 || f.q > 16 || f.t > 16) fail("formula too large for evaluation");
  for (unsigned x = 0; x < (1u << f.p); ++x) {
    bool all_y = true;
    for (unsigned y = 0; y < (1u << f.q) && all_y; ++y) {
      bool some_z = false;
      for (unsigned z = 0; z < (1u << f.t) && !some_z; ++z) {
        bool all_clauses = true;
        for (const auto& c : f.clauses) {
          bool sat = false;
          for (const auto& l : c) sat = sat || lit_true(l, x, y, z);
          if (!sat) { all_clauses = false; break; }
        }
        some_z = all_clauses;
      }
      all_y = some_z;
    }
    if (all_y) return true;
  }
  return false;
}

DominatedInstance gen_qsat2_dominated(const Qbf2Formula& f) {
  if (!well_formed(f)) fail("formula is not well-formed");
  int r = static_cast<int>(f.clauses.size());
  ArenaBuilder b;
  for (int i = 1; i <= 2 * f.q; ++i) b.g.players.push_back(std::to_string(i));
  b.g.players.push_back("E");
  b.g.players.push_back("A");
  int n = b.g.num_players();
  int pE = n - 2, pA = n - 1;

  auto lit_name = [](int i, int j) {
    return "l" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
  };

  std::vector<std::string> clause_names;
  for (int i = 0; i < r; ++i) clause_names.push_back("C" + std::to_string(i + 1));
  b.add_state("s_init", std::vector<long>(n, 0), pE, clause_names);
  for (int i = 0; i < r; ++i)
    b.add_state(clause_names[i], std::vector<long>(n, 0), pA,
                {lit_name(i, 0), lit_name(i, 1), lit_name(i, 2)});

  for (int i = 0; i < r; ++i)
    for (int j = 0; j < 3; ++j) {
      const QbfLit& l = f.clauses[i][j];
      std::string me = lit_name(i, j);
      std::vector<long> w(n, 0);
      if (l.block == 'x') {
        b.add_state(me, std::move(w), pE, {me});
        continue;
      }
      // y_k rewards player 2k-1 and harms player 2k; the harmed player
      // controls the state and may chase the variable into another clause
      // or give up and head for the sink.
      int k = l.idx;
      long amp = 2L * f.q;
      w[2 * k - 2] = l.neg ? -amp : amp;
      w[2 * k - 1] = l.neg ? amp : -amp;
      int ctrl = l.neg ? 2 * k - 2 : 2 * k - 1;
      std::vector<std::string> out = {me};
      for (int h = 0; h < r; ++h)
        if (h != i && clause_has_var(f.clauses[h], 'y', k) &&
            !clash(f.clauses[i], f.clauses[h], 'x'))
          out.push_back(clause_names[h]);
      out.push_back("s_sink");
      b.add_state(me, std::move(w), ctrl, std::move(out));
    }

  std::vector<long> sink_w(n, -1);
  sink_w[pA] = 0;
  b.add_state("s_sink", std::move(sink_w), pE, {"s_sink"});
  b.finalise();

  DominatedInstance inst;
  inst.game = std::move(b.g);
  inst.state = "s_init";
  inst.query.assign(n, Rat(-1));
  inst.query[pA] = Rat(0);
  return inst;
}

namespace {

// I-state outcomes of the matching-pennies style gadget, H=0, T=1,
// indexed by the (P,Q,R) action bits.
constexpr const char* kGadgetSucc[8] = {"U", "U", "M", "I", "I", "B", "M", "B"};

}  // namespace

Game gen_qsat3_nonemptiness(const Qbf3Formula& f) {
  if (!well_formed(f)) fail("formula is not well-formed");
  int r = static_cast<int>(f.clauses.size());
  ArenaBuilder b;
  for (int i = 1; i <= 2 * f.p + 2 * f.t; ++i)
    b.g.players.push_back(std::to_string(i));
  for (const char* nm : {"E", "A", "P", "Q", "R"}) b.g.players.push_back(nm);
  int n = b.g.num_players();
  int pE = n - 5, pA = n - 4, pP = n - 3, pQ = n - 2, pR = n - 1;

  auto lit_name = [](int i, int j) {
    return "l" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
  };
  std::vector<std::string> clause_names;
  for (int i = 0; i < r; ++i) clause_names.push_back("C" + std::to_string(i + 1));

  b.add_state("s_init", std::vector<long>(n, 0), pA, clause_names);
  for (int i = 0; i < r; ++i)
    b.add_state(clause_names[i], std::vector<long>(n, 0), pE,
                {lit_name(i, 0), lit_name(i, 1), lit_name(i, 2)});

  // z-literal states need a joint rule (A proposes staying or a compatible
  // clause, the owner may veto to the sink); remember them and patch after
  // finalise().
  struct ZState { int state; int owner; };
  std::vector<ZState> zfix;

  for (int i = 0; i < r; ++i)
    for (int j = 0; j < 3; ++j) {
      const QbfLit& l = f.clauses[i][j];
      std::string me = lit_name(i, j);
      std::vector<long> w(n, 0);
      long amp = 3L * r;
      if (l.block == 'y') {
        b.add_state(me, std::move(w), pE, {"I"});
        continue;
      }
      if (l.block == 'x') {
        int k = l.idx;
        w[2 * k - 2] = l.neg ? -amp : amp;
        w[2 * k - 1] = l.neg ? amp : -amp;
        int ctrl = l.neg ? 2 * k - 1 : 2 * k - 2;
        b.add_state(me, std::move(w), ctrl, {"s_init", "I"});
        continue;
      }
      int k = l.idx;
      w[2 * f.p + 2 * k - 2] = l.neg ? -amp : amp;
      w[2 * f.p + 2 * k - 1] = l.neg ? amp : -amp;
      int owner = l.neg ? 2 * f.p + 2 * k - 1 : 2 * f.p + 2 * k - 2;
      std::vector<std::string> out = {me};
      for (int h = 0; h < r; ++h)
        if (!clash(f.clauses[i], f.clauses[h], 'y'))
          out.push_back(clause_names[h]);
      int s = b.add_state(me, std::move(w), pA, std::move(out));
      zfix.push_back({s, owner});
    }

  auto gadget_w = [&](long wp, long wq, long wr) {
    std::vector<long> w(n, 1);
    w[pE] = 0;
    w[pP] = wp; w[pQ] = wq; w[pR] = wr;
    return w;
  };
  int sI = b.add_state("I", gadget_w(-1, -1, -1), pP, {"I"});
  b.add_state("U", gadget_w(2, 1, 0), pP, {"U"});
  b.add_state("M", gadget_w(0, 2, 1), pP, {"M"});
  b.add_state("B", gadget_w(1, 0, 2), pP, {"B"});
  b.finalise();

  Game& g = b.g;
  // x-literal owners and z-literal owners always have a veto action.
  for (int i = 0; i < 2 * f.p + 2 * f.t; ++i)
    while (g.actions[i].size() < 2)
      g.actions[i].push_back("a" + std::to_string(g.actions[i].size()));
  // P, Q, R toss coins at I.
  for (int i : {pP, pQ, pR})
    while (g.actions[i].size() < 2)
      g.actions[i].push_back("a" + std::to_string(g.actions[i].size()));
  long np = g.profile_count();
  for (auto& row : g.transitions) row.resize(np);
  for (int s = 0; s < g.num_states(); ++s)
    for (long pi = 0; pi < np; ++pi) {
      auto acts = g.profile_actions(pi);
      int ctrl = std::max(b.controller[s], 0);
      size_t k = std::min<size_t>(acts[ctrl], b.succs[s].size() - 1);
      g.transitions[s][pi] = g.state_index(b.succs[s][k]);
    }
  for (const ZState& z : zfix)
    for (long pi = 0; pi < np; ++pi)
      if (g.profile_actions(pi)[z.owner] == 1)
        g.transitions[z.state][pi] = sI;
  for (long pi = 0; pi < np; ++pi) {
    auto acts = g.profile_actions(pi);
    int bits = (acts[pP] << 2) | (acts[pQ] << 1) | acts[pR];
    g.transitions[sI][pi] = g.state_index(kGadgetSucc[bits]);
  }
  return g;
}

Game sink_gadget_game() {
  ArenaBuilder b;
  for (const char* nm : {"P", "Q", "R"}) b.g.players.push_back(nm);
  int sI = b.add_state("I", {-1, -1, -1}, 0, {"I"});
  b.add_state("U", {2, 1, 0}, 0, {"U"});
  b.add_state("M", {0, 2, 1}, 0, {"M"});
  b.add_state("B", {1, 0, 2}, 0, {"B"});
  b.finalise();
  Game& g = b.g;
  for (auto& acts : g.actions) acts = {"H", "T"};
  long np = g.profile_count();
  for (auto& row : g.transitions) row.assign(np, -1);
  for (long pi = 0; pi < np; ++pi) {
    auto acts = g.profile_actions(pi);
    int bits = (acts[0] << 2) | (acts[1] << 1) | acts[2];
    g.transitions[sI][pi] = g.state_index(kGadgetSucc[bits]);
    for (int s = 1; s < 4; ++s) g.transitions[s][pi] = s;
  }
  return g;
}

namespace {

void check_dfas(const std::vector<Dfa>& automata) {
  if (automata.empty()) fail("need at least one automaton");
  for (const Dfa& d : automata) {
    if (d.states.empty() || d.alphabet.empty()) fail("empty automaton");
    if (d.alphabet != automata[0].alphabet)
      fail("automata must share one alphabet");
    if (d.delta.size() != d.states.size()) fail("bad transition table");
    for (const auto& row : d.delta)
      if (row.size() != d.alphabet.size()) fail("bad transition table");
  }
}

// Rewrites the automata so each has exactly one accepting state, reachable
// only by reading one fresh shared symbol from a previously accepting state.
// Intersection emptiness is preserved: w is jointly accepted before iff
// w followed by the fresh symbol is after.
std::vector<Dfa> single_accepting(std::vector<Dfa> automata) {
  bool needed = false;
  for (const Dfa& d : automata) needed = needed || d.accepting.size() != 1;
  if (!needed) return automata;
  for (Dfa& d : automata) {
    int fin = static_cast<int>(d.states.size());
    int dead = fin + 1;
    d.states.push_back("__fin");
    d.states.push_back("__dead");
    d.alphabet.push_back("__acc");
    std::set<int> acc(d.accepting.begin(), d.accepting.end());
    for (size_t q = 0; q < d.delta.size(); ++q)
      d.delta[q].push_back(acc.count(static_cast<int>(q)) ? fin : dead);
    d.delta.push_back(std::vector<int>(d.alphabet.size(), dead));
    d.delta.push_back(std::vector<int>(d.alphabet.size(), dead));
    d.accepting = {fin};
  }
  return automata;
}

}  // namespace

bool dfa_intersection_nonempty(const std::vector<Dfa>& automata) {
  check_dfas(automata);
  size_t n = automata.size();
  std::vector<std::set<int>> acc(n);
  for (size_t i = 0; i < n; ++i)
    acc[i] = {automata[i].accepting.begin(), automata[i].accepting.end()};

  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> work;
  std::vector<int> start(n);
  for (size_t i = 0; i < n; ++i) start[i] = automata[i].init;
  seen.insert(start);
  work.push_back(start);
  while (!work.empty()) {
    auto cur = work.front();
    work.pop_front();
    bool all = true;
    for (size_t i = 0; i < n; ++i) all = all && acc[i].count(cur[i]);
    if (all) return true;
    for (size_t a = 0; a < automata[0].alphabet.size(); ++a) {
      std::vector<int> nxt(n);
      for (size_t i = 0; i < n; ++i) nxt[i] = automata[i].delta[cur[i]][a];
      if (seen.insert(nxt).second) work.push_back(nxt);
    }
  }
  return false;
}

BenDevInstance gen_dfa_bendev(const std::vector<Dfa>& automata) {
  check_dfas(automata);
  auto as = single_accepting(automata);
  int n = static_cast<int>(as.size());

  Game g;
  for (int i = 0; i < n; ++i) g.players.push_back(std::to_string(i + 1));
  g.states = {"s0", "s1", "s2"};
  g.labels.assign(3, {});
  g.weights = {std::vector<long>(n, 0), std::vector<long>(n, 1),
               std::vector<long>(n, 1)};
  for (int i = 0; i < n; ++i) {
    g.actions.push_back(as[i].states);
    g.actions[i].push_back("d");
  }
  long np = g.profile_count();
  g.transitions.assign(3, std::vector<int>(np, -1));
  for (long pi = 0; pi < np; ++pi) {
    auto acts = g.profile_actions(pi);
    bool all_d = true, all_acc = true;
    for (int i = 0; i < n; ++i) {
      all_d = all_d && acts[i] == static_cast<int>(as[i].states.size());
      all_acc = all_acc && acts[i] == as[i].accepting[0];
    }
    g.transitions[0][pi] = all_d ? 1 : (all_acc ? 2 : 0);
    g.transitions[1][pi] = 1;
    g.transitions[2][pi] = 2;
  }

  // Each player's machine simulates their automaton on the run and plays its
  // current automaton state as the action. The automata only ever observe
  // repetitions of s0 before the play settles, so they are driven by the
  // first alphabet symbol; in s1/s2 the machine no longer moves.
  StrategyProfile prof;
  for (int i = 0; i < n; ++i) {
    StrategyMachine m;
    m.internal_states = as[i].states;
    m.init = as[i].init;
    int q = static_cast<int>(as[i].states.size());
    m.delta.assign(q, std::vector<int>(3, 0));
    m.act.assign(q, 0);
    for (int s = 0; s < q; ++s) {
      m.delta[s][0] = as[i].delta[s][0];
      m.delta[s][1] = s;
      m.delta[s][2] = s;
      m.act[s] = s;
    }
    prof.machines.push_back(std::move(m));
  }
  return {std::move(g), std::move(prof)};
}

namespace {

QbfLit parse_lit(const std::string& s, const std::string& blocks) {
  QbfLit l;
  size_t pos = 0;
  if (pos < s.size() && s[pos] == '!') { l.neg = true; ++pos; }
  if (pos >= s.size() || blocks.find(s[pos]) == std::string::npos)
    fail("bad literal '" + s + "'");
  l.block = s[pos++];
  try {
    size_t used = 0;
    l.idx = std::stoi(s.substr(pos), &used);
    if (pos + used != s.size() || l.idx < 1) fail("bad literal '" + s + "'");
  } catch (const std::logic_error&) {
    fail("bad literal '" + s + "'");
  }
  return l;
}

std::vector<QbfClause> parse_clauses(const json& j, const std::string& blocks) {
  std::vector<QbfClause> out;
  for (const auto& cj : j) {
    if (!cj.is_array() || cj.size() != 3) fail("each clause needs 3 literals");
    QbfClause c;
    for (int i = 0; i < 3; ++i)
      c[i] = parse_lit(cj[i].get<std::string>(), blocks);
    out.push_back(c);
  }
  return out;
}

}  // namespace

Qbf2Formula parse_qbf2(const std::string& text) {
  json j = json::parse(text);
  Qbf2Formula f;
  f.p = j.at("p").get<int>();
  f.q = j.at("q").get<int>();
  f.clauses = parse_clauses(j.at("clauses"), "xy");
  if (!well_formed(f)) fail("formula is not well-formed");
  return f;
}

Qbf3Formula parse_qbf3(const std::string& text) {
  json j = json::parse(text);
  Qbf3Formula f;
  f.p = j.at("p").get<int>();
  f.q = j.at("q").get<int>();
  f.t = j.at("t").get<int>();
  f.clauses = parse_clauses(j.at("clauses"), "xyz");
  if (!well_formed(f)) fail("formula is not well-formed");
  return f;
}

std::vector<Dfa> parse_dfas(const std::string& text) {
  json j = json::parse(text);
  std::vector<std::string> alphabet =
      j.at("alphabet").get<std::vector<std::string>>();
  std::vector<Dfa> out;
  for (const auto& aj : j.at("automata")) {
    Dfa d;
    d.alphabet = alphabet;
    d.states = aj.at("states").get<std::vector<std::string>>();
    auto sidx = [&](const std::string& nm) {
      auto it = std::find(d.states.begin(), d.states.end(), nm);
      if (it == d.states.end()) fail("unknown automaton state '" + nm + "'");
      return static_cast<int>(it - d.states.begin());
    };
    d.init = sidx(aj.at("init").get<std::string>());
    for (const auto& acc : aj.at("accepting"))
      d.accepting.push_back(sidx(acc.get<std::string>()));
    d.delta.assign(d.states.size(), std::vector<int>(alphabet.size(), -1));
    const auto& dj = aj.at("delta");
    for (size_t q = 0; q < d.states.size(); ++q)
      for (size_t a = 0; a < alphabet.size(); ++a) {
        const auto& row = dj.at(d.states[q]);
        d.delta[q][a] = sidx(row.at(alphabet[a]).get<std::string>());
      }
    out.push_back(std::move(d));
  }
  check_dfas(out);
  return out;
}

}  // namespace mpgcore
