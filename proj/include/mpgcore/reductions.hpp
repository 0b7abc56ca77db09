#ifndef MPGCORE_REDUCTIONS_HPP
#define MPGCORE_REDUCTIONS_HPP

#include <array>

#include "mpgcore/game.hpp"

namespace mpgcore {

// Literal over one of the quantifier blocks ('x', 'y', 'z'), 1-based index.
struct QbfLit {
  char block = 'x';
  int idx = 1;
  bool neg = false;

  bool operator==(const QbfLit&) const = default;
  std::string str() const {
    return (neg ? std::string("!") : std::string()) + block + std::to_string(idx);
  }
};

using QbfClause = std::array<QbfLit, 3>;

// exists x_1..x_p forall y_1..y_q (C_1 | ... | C_r), clauses conjunctive.
struct Qbf2Formula {
  int p = 0, q = 0;
  std::vector<QbfClause> clauses;
};

// exists x forall y exists z (C_1 & ... & C_r), clauses disjunctive.
struct Qbf3Formula {
  int p = 0, q = 0, t = 0;
  std::vector<QbfClause> clauses;
};

struct Dfa {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  int init = 0;
  std::vector<int> accepting;
  std::vector<std::vector<int>> delta;  // [state][symbol] -> state
};

// No clause may contain a variable together with its negation.
bool well_formed(const Qbf2Formula& f);
bool well_formed(const Qbf3Formula& f);

bool qbf_eval(const Qbf2Formula& f);
bool qbf_eval(const Qbf3Formula& f);

struct DominatedInstance {
  Game game;
  std::string state;  // always the initial state
  RatVec query;
};

DominatedInstance gen_qsat2_dominated(const Qbf2Formula& f);

Game gen_qsat3_nonemptiness(const Qbf3Formula& f);

// The four-state sink component as a standalone three-player game.
Game sink_gadget_game();

struct BenDevInstance {
  Game game;
  StrategyProfile profile;
};

BenDevInstance gen_dfa_bendev(const std::vector<Dfa>& automata);

bool dfa_intersection_nonempty(const std::vector<Dfa>& automata);

Qbf2Formula parse_qbf2(const std::string& text);
Qbf3Formula parse_qbf3(const std::string& text);
std::vector<Dfa> parse_dfas(const std::string& text);

}  // namespace mpgcore

#endif
