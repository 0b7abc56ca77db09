#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "mpgcore/decisions.hpp"
#include "mpgcore/payoff.hpp"

using namespace mpgcore;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RatVec cycle_payoff(const Game& g, const std::vector<int>& cycle) {
  RatVec avg(g.num_players(), Rat(0));
  for (int s : cycle)
    for (int i = 0; i < g.num_players(); ++i) avg[i] += Rat(g.weights[s][i]);
  for (auto& v : avg) v /= Rat(static_cast<long>(cycle.size()));
  return avg;
}

}  // namespace

TEST_CASE("dominated verdicts carry enforceable strict improvements") {
  Game g = parse_game(slurp("example2.game"));
  Verdict v = dominated(g, g.init, {Rat(2), Rat(1), Rat(0)});
  REQUIRE(v.answer);
  REQUIRE(v.coalition.has_value());
  REQUIRE(v.improvement.has_value());
  // the witness must really be enforceable and strictly better
  CHECK(can_enforce(g, *v.coalition, g.init, *v.improvement));
  RatVec x = {Rat(2), Rat(1), Rat(0)};
  for (size_t j = 0; j < v.coalition->members.size(); ++j)
    CHECK((*v.improvement)[j] > x[v.coalition->members[j]]);
}

TEST_CASE("the not-dominated verdict is upward closed") {
  Game g = parse_game(slurp("example2_mod.game"));
  RatVec base = {Rat(1), Rat(1), Rat(1)};
  REQUIRE_FALSE(dominated(g, g.init, base).answer);
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> num(0, 8), den(1, 4), coord(0, 2);
  CoreSolver solver(g);
  for (int trial = 0; trial < 100; ++trial) {
    RatVec x = base;
    x[coord(rng)] += rat(num(rng), den(rng));
    x[coord(rng)] += rat(num(rng), den(rng));
    CAPTURE(vec_str(x));
    CHECK_FALSE(solver.dominated(g.init, x).answer);
  }
}

TEST_CASE("the dominated verdict is downward closed") {
  Game g = parse_game(slurp("example2.game"));
  RatVec base = {Rat(0), Rat(0), Rat(0)};
  REQUIRE(dominated(g, g.init, base).answer);
  std::mt19937 rng(20240818);
  std::uniform_int_distribution<int> num(0, 8), den(1, 4), coord(0, 2);
  CoreSolver solver(g);
  for (int trial = 0; trial < 100; ++trial) {
    RatVec x = base;
    x[coord(rng)] -= rat(num(rng), den(rng));
    CAPTURE(vec_str(x));
    CHECK(solver.dominated(g.init, x).answer);
  }
}

TEST_CASE("membership is the negation of beneficial deviation") {
  Game g1 = parse_game(slurp("example1.game"));
  Game g2 = parse_game(slurp("example2.game"));
  std::vector<std::pair<Game*, std::string>> cases = {
      {&g1, "alternating.profile"},
      {&g1, "badne.profile"},
      {&g2, "stay.profile"},
      {&g2, "t_forcing.profile"}};
  for (auto& [g, name] : cases) {
    CAPTURE(name);
    StrategyProfile p = parse_profile(slurp(name), *g);
    CHECK(membership(*g, p).answer !=
          exists_beneficial_deviation(*g, p).answer);
  }
}

TEST_CASE("profiles of the two-player cycle game sort into and out of the core") {
  Game g = parse_game(slurp("example1.game"));
  // alternating pays (1/4,1/4) but the pair can jointly slow the alternation
  // and approach (1/2,1/2), so the profile is improvable
  StrategyProfile alt = parse_profile(slurp("alternating.profile"), g);
  Verdict va = exists_beneficial_deviation(g, alt);
  CHECK(va.answer);
  CHECK(va.payoff == RatVec{rat(1, 4), rat(1, 4)});

  Game pg = parse_game(slurp("ll_core.game"));
  StrategyProfile ll = parse_profile(slurp("ll.profile"), pg);
  CHECK(membership(pg, ll).answer);

  StrategyProfile bad = parse_profile(slurp("badne.profile"), g);
  Verdict v = exists_beneficial_deviation(g, bad);
  CHECK(v.answer);
  CHECK(v.payoff == RatVec{Rat(0), Rat(0)});
}

TEST_CASE("core emptiness flips when the idle state becomes rewarding") {
  Game orig = parse_game(slurp("example2.game"));
  CHECK_FALSE(core_nonempty(orig).answer);

  Game mod = parse_game(slurp("example2_mod.game"));
  Verdict v = core_nonempty(mod);
  REQUIRE(v.answer);
  REQUIRE(v.payoff.has_value());
  CHECK(*v.payoff == RatVec{Rat(1), Rat(1), Rat(1)});
}

TEST_CASE("non-emptiness witnesses re-verify") {
  Game g = parse_game(slurp("example2_mod.game"));
  CoreSolver solver(g);
  Verdict v = solver.core_nonempty();
  REQUIRE(v.answer);
  REQUIRE(v.payoff.has_value());
  REQUIRE(v.lasso.has_value());
  REQUIRE(v.state_set.has_value());
  // the witness payoff is undominated at every state the lasso visits
  for (int s : *v.state_set) CHECK_FALSE(solver.dominated(s, *v.payoff).answer);
  // the cycle is closed, stays inside S, and pays at least the witness vector
  const Lasso& l = *v.lasso;
  REQUIRE(!l.cycle.empty());
  for (int s : l.cycle) CHECK(v.state_set->count(s));
  RatVec pay = cycle_payoff(g, l.cycle);
  CHECK(leq_componentwise(*v.payoff, pay));
  int prev = l.cycle.back();
  for (int s : l.cycle) {
    bool edge = false;
    for (long k = 0; k < g.profile_count() && !edge; ++k)
      edge = g.transitions[prev][k] == s;
    CHECK(edge);
    prev = s;
  }
}

TEST_CASE("payoff caps bound every enforceable value") {
  Game g = parse_game(slurp("example2.game"));
  CoreSolver solver(g);
  const RatVec& caps = solver.payoff_caps(g.init);
  CHECK(caps == RatVec{Rat(2), Rat(2), Rat(2)});
  // no single player can enforce more than their cap
  for (int i = 0; i < g.num_players(); ++i)
    CHECK_FALSE(can_enforce(g, Coalition{{i}}, g.init, {caps[i] + Rat(1)}));
}

TEST_CASE("coalition regions drive the dominated answer") {
  Game g = parse_game(slurp("example2.game"));
  CoreSolver solver(g);
  // {2,3} can enforce strictly above the t-cycle payoff restricted to them
  PolyUnion reg = solver.coalition_region(Coalition{{1, 2}}, g.init);
  // the region holds the vectors NOT strictly improvable by {2,3}
  CHECK(reg.contains({Rat(9), Rat(2), Rat(1)}));
  CHECK_FALSE(reg.contains({Rat(9), Rat(0), Rat(0)}));
}
