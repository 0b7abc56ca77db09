#ifndef MPGCORE_GR1_HPP
#define MPGCORE_GR1_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "mpgcore/game.hpp"

namespace mpgcore {

// Boolean combination of atomic propositions.
struct BoolCombo {
  enum class Kind { Atom, Not, And, Or, True, False } kind = Kind::True;
  std::string atom;
  std::vector<BoolCombo> children;

  bool eval(const std::set<std::string>& props) const;
  std::string str() const;
};

// (GF psi_1 & ... & GF psi_m) -> (GF theta_1 & ... & GF theta_n);
// an empty list on either side encodes `true`.
struct Gr1Spec {
  std::vector<BoolCombo> premises;
  std::vector<BoolCombo> guarantees;
};

// Requirement bundle for the negated spec: visit every `infinitely_often`
// set infinitely often while visiting `finitely_often` only finitely often.
struct Gr1Bundle {
  std::vector<BoolCombo> infinitely_often;  // all premises
  BoolCombo finitely_often;                 // one violated guarantee
};

// Grammar: `GF <bool> (& GF <bool>)* -> GF <bool> (& GF <bool>)*`, with
// `true` allowed on either side; <bool> uses atoms, !, &, |, parentheses.
Gr1Spec parse_gr1(const std::string& text);

std::set<int> sat_states(const Game& g, const BoolCombo& b);

std::vector<Gr1Bundle> negate_gr1(const Gr1Spec& spec);

}  // namespace mpgcore

#endif
