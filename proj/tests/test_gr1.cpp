#include <doctest.h>

#include <fstream>
#include <sstream>

#include "mpgcore/gr1.hpp"

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

TEST_CASE("parse_gr1 reads implication form") {
  Gr1Spec s = parse_gr1("GF a & GF b -> GF c");
  CHECK(s.premises.size() == 2);
  CHECK(s.guarantees.size() == 1);
  CHECK(s.premises[0].str() == "a");
  CHECK(s.guarantees[0].str() == "c");
}

TEST_CASE("parse_gr1 accepts premise-free guarantees and true") {
  Gr1Spec s = parse_gr1("true -> GF at_s");
  CHECK(s.premises.empty());
  REQUIRE(s.guarantees.size() == 1);

  Gr1Spec t = parse_gr1("GF (a | !b) -> GF (a & b)");
  REQUIRE(t.premises.size() == 1);
  std::set<std::string> props = {"a"};
  CHECK(t.premises[0].eval(props));
  CHECK_FALSE(t.guarantees[0].eval(props));
}

TEST_CASE("boolean combinations evaluate over label sets") {
  Gr1Spec s = parse_gr1("GF (!a & (b | c)) -> GF true");
  const BoolCombo& b = s.premises[0];
  CHECK(b.eval({"b"}));
  CHECK(b.eval({"c"}));
  CHECK_FALSE(b.eval({"a", "b"}));
  CHECK_FALSE(b.eval({}));
}

TEST_CASE("sat_states maps combinations to labelled states") {
  Game g = parse_game(slurp("example2.game"));
  Gr1Spec s = parse_gr1("true -> GF (at_s | at_t)");
  std::set<int> v = sat_states(g, s.guarantees[0]);
  CHECK(v == std::set<int>{g.state_index("s"), g.state_index("t")});
}

TEST_CASE("negate_gr1 produces one bundle per violated guarantee") {
  Gr1Spec s = parse_gr1("GF a & GF b -> GF c & GF d");
  auto bundles = negate_gr1(s);
  // negation: all premises hold infinitely often, one guarantee fails
  REQUIRE(bundles.size() == 2);
  for (const auto& b : bundles) CHECK(b.infinitely_often.size() == 2);
  CHECK(bundles[0].finitely_often.str() == "c");
  CHECK(bundles[1].finitely_often.str() == "d");
}

TEST_CASE("negating an unconditional spec yields no premise obligations") {
  Gr1Spec s = parse_gr1("true -> GF a");
  auto bundles = negate_gr1(s);
  REQUIRE(bundles.size() == 1);
  CHECK(bundles[0].infinitely_often.empty());
  CHECK(bundles[0].finitely_often.str() == "a");
}
