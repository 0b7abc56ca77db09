#include <doctest.h>

#include <fstream>
#include <sstream>

#include "mpgcore/decisions.hpp"
#include "mpgcore/oracle.hpp"
#include "mpgcore/values.hpp"

using namespace mpgcore;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("brute-force membership on the fixtures") {
  Game pg = parse_game(slurp("ll_core.game"));
  StrategyProfile ll = parse_profile(slurp("ll.profile"), pg);
  CHECK(brute_membership(pg, ll) == Tri::yes);

  Game g2 = parse_game(slurp("example2.game"));
  StrategyProfile tf = parse_profile(slurp("t_forcing.profile"), g2);
  CHECK(brute_membership(g2, tf) == Tri::no);
}

TEST_CASE("brute-force membership is one-sided") {
  // The zero-payoff equilibrium admits a finite-memory grand deviation
  // (alternate between the two loops), but no memoryless one: memoryless
  // play fixes one choice at m and can only reward one of the two players.
  // The oracle's yes is therefore evidence, not proof; only its no is sound.
  Game g1 = parse_game(slurp("example1.game"));
  StrategyProfile bad = parse_profile(slurp("badne.profile"), g1);
  CHECK(brute_membership(g1, bad) != Tri::no);
  CHECK(exists_beneficial_deviation(g1, bad).answer);
}

TEST_CASE("brute-force membership refutations agree with the solver") {
  Game g2 = parse_game(slurp("example2.game"));
  StrategyProfile tf = parse_profile(slurp("t_forcing.profile"), g2);
  REQUIRE(brute_membership(g2, tf) == Tri::no);
  CHECK_FALSE(membership(g2, tf).answer);
}

TEST_CASE("brute-force enforceability") {
  Game g2 = parse_game(slurp("example2.game"));
  Coalition c23;
  c23.members = {1, 2};
  BruteForceBudget b1;
  b1.max_denominator = 1;
  CHECK(brute_enforce(g2, c23, "s", {Rat(2), Rat(1)}, b1) == Tri::yes);
  CHECK(brute_enforce(g2, c23, "s", {Rat(2), Rat(3, 2)}) == Tri::no);
  // above the weight maximum of the whole arena
  CHECK(brute_enforce(g2, c23, "s", {Rat(10), Rat(10)}) == Tri::no);

  Game g1 = parse_game(slurp("example1.game"));
  Coalition grand;
  grand.members = {0, 1};
  BruteForceBudget b4;
  b4.max_denominator = 4;
  CHECK(brute_enforce(g1, grand, "m", {Rat(1, 4), Rat(1, 4)}, b4) == Tri::yes);
  CHECK(brute_enforce(g1, grand, "m", {Rat(1), Rat(1)}, b4) == Tri::no);
}

TEST_CASE("brute-force enforceability agrees with the exact computation") {
  Game g1 = parse_game(slurp("example1.game"));
  Game g2 = parse_game(slurp("example2.game"));
  struct Probe { Game* g; std::vector<int> members; const char* s; RatVec x; };
  std::vector<Probe> probes = {
      {&g1, {0, 1}, "m", {Rat(1, 2), Rat(1, 2)}},
      {&g1, {0}, "m", {Rat(1, 2)}},
      {&g1, {0}, "m", {Rat(1)}},
      {&g2, {1, 2}, "s", {Rat(2), Rat(1)}},
      {&g2, {0}, "s", {Rat(2)}},
      {&g2, {0, 1, 2}, "s", {Rat(1), Rat(1), Rat(1)}},
  };
  BruteForceBudget b;
  b.max_denominator = 8;
  for (const auto& p : probes) {
    Coalition c;
    c.members = p.members;
    Tri t = brute_enforce(*p.g, c, p.s, p.x, b);
    if (t == Tri::inconclusive) continue;
    bool exact = can_enforce(*p.g, c, p.g->state_index(p.s), p.x);
    CHECK((t == Tri::yes) == exact);
  }
}
