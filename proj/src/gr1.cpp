#include "mpgcore/gr1.hpp"

#include <cctype>
#include <stdexcept>

namespace mpgcore {

bool BoolCombo::eval(const std::set<std::string>& props) const {
  switch (kind) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Atom:
      return props.count(atom) > 0;
    case Kind::Not:
      return !children[0].eval(props);
    case Kind::And:
      return children[0].eval(props) && children[1].eval(props);
    case Kind::Or:
      return children[0].eval(props) || children[1].eval(props);
  }
  return false;
}

std::string BoolCombo::str() const {
  switch (kind) {
    case Kind::True:
      return "true";
    case Kind::False:
      return "false";
    case Kind::Atom:
      return atom;
    case Kind::Not:
      return "!" + children[0].str();
    case Kind::And:
      return "(" + children[0].str() + " & " + children[1].str() + ")";
    case Kind::Or:
      return "(" + children[0].str() + " | " + children[1].str() + ")";
  }
  return "";
}

namespace {

struct Parser {
  const std::string& text;
  size_t pos = 0;

  explicit Parser(const std::string& t) : text(t) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("spec syntax error at position " +
                             std::to_string(pos) + ": " + msg);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(const std::string& tok) {
    skip_ws();
    if (text.compare(pos, tok.size(), tok) == 0) {
      // keywords must not run into a following identifier character
      if (std::isalpha(static_cast<unsigned char>(tok[0]))) {
        size_t end = pos + tok.size();
        if (end < text.size() &&
            (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_'))
          return false;
      }
      pos += tok.size();
      return true;
    }
    return false;
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected identifier");
    return text.substr(start, pos - start);
  }

  // bool := or ; or := and ('|' and)* ; and := unary ('&' unary)* ;
  // unary := '!' unary | '(' bool ')' | 'true' | 'false' | atom
  BoolCombo parse_bool() { return parse_or(); }

  BoolCombo parse_or() {
    BoolCombo lhs = parse_and();
    while (true) {
      skip_ws();
      if (!eat("|")) return lhs;
      BoolCombo node;
      node.kind = BoolCombo::Kind::Or;
      node.children = {std::move(lhs), parse_and()};
      lhs = std::move(node);
    }
  }

  BoolCombo parse_and() {
    BoolCombo lhs = parse_unary();
    while (true) {
      skip_ws();
      // '&' at spec level separates GF conjuncts; inside a <bool> it binds
      // Boolean conjunction, disambiguated by the caller only consuming one
      // <bool> after each GF. A lone '&' followed by 'GF' ends the term.
      size_t save = pos;
      if (!eat("&")) return lhs;
      skip_ws();
      if (text.compare(pos, 2, "GF") == 0 &&
          (pos + 2 >= text.size() ||
           !(std::isalnum(static_cast<unsigned char>(text[pos + 2])) || text[pos + 2] == '_'))) {
        pos = save;
        return lhs;
      }
      BoolCombo node;
      node.kind = BoolCombo::Kind::And;
      node.children = {std::move(lhs), parse_unary()};
      lhs = std::move(node);
    }
  }

  BoolCombo parse_unary() {
    skip_ws();
    if (eat("!")) {
      BoolCombo node;
      node.kind = BoolCombo::Kind::Not;
      node.children = {parse_unary()};
      return node;
    }
    if (eat("(")) {
      BoolCombo inner = parse_bool();
      if (!eat(")")) fail("expected ')'");
      return inner;
    }
    if (eat("true")) {
      BoolCombo node;
      node.kind = BoolCombo::Kind::True;
      return node;
    }
    if (eat("false")) {
      BoolCombo node;
      node.kind = BoolCombo::Kind::False;
      return node;
    }
    BoolCombo node;
    node.kind = BoolCombo::Kind::Atom;
    node.atom = ident();
    return node;
  }

  // side := 'true' | GF <bool> ('&' GF <bool>)*
  std::vector<BoolCombo> parse_side() {
    skip_ws();
    size_t save = pos;
    if (eat("true")) {
      skip_ws();
      // bare `true` only; `true & ...` is not in the grammar
      return {};
    }
    pos = save;
    std::vector<BoolCombo> out;
    if (!eat("GF")) fail("expected 'GF' or 'true'");
    out.push_back(parse_bool());
    while (true) {
      size_t mark = pos;
      if (!eat("&")) break;
      if (!eat("GF")) {
        pos = mark;
        break;
      }
      out.push_back(parse_bool());
    }
    return out;
  }

  Gr1Spec parse_spec() {
    Gr1Spec spec;
    spec.premises = parse_side();
    skip_ws();
    if (!eat("->")) fail("expected '->'");
    spec.guarantees = parse_side();
    skip_ws();
    if (pos != text.size()) fail("trailing input");
    return spec;
  }
};

}  // namespace

Gr1Spec parse_gr1(const std::string& text) {
  Parser p(text);
  return p.parse_spec();
}

std::set<int> sat_states(const Game& g, const BoolCombo& b) {
  std::set<int> out;
  for (int s = 0; s < g.num_states(); ++s)
    if (b.eval(g.labels[s])) out.insert(s);
  return out;
}

std::vector<Gr1Bundle> negate_gr1(const Gr1Spec& spec) {
  std::vector<Gr1Bundle> out;
  for (const auto& theta : spec.guarantees)
    out.push_back({spec.premises, theta});
  return out;
}

}  // namespace mpgcore
