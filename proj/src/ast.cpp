#include "cstar/ast.hpp"

#include "cstar/errors.hpp"

#include <cctype>

namespace cstar {

namespace {

struct Tokenizer {
  const std::string& s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at_end() {
    skip();
    return pos >= s.size();
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }
  void expect(char c) {
    if (peek() != c) throw parse_error(std::string("expected '") + c + "' at offset " + std::to_string(pos));
    ++pos;
  }
  std::string atom() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '(' && s[pos] != ')') ++pos;
    if (start == pos) throw parse_error("expected an atom at offset " + std::to_string(pos));
    return s.substr(start, pos - start);
  }
};

Expr parse(Tokenizer& t) {
  t.expect('(');
  std::string head = t.atom();
  Expr e;
  if (head == "gen") {
    e.kind = Expr::Kind::gen;
    std::string n = t.atom();
    for (char c : n)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw parse_error("bad generator index '" + n + "'");
    try {
      e.index = std::stoull(n);
    } catch (const std::exception&) {
      throw parse_error("generator index out of range '" + n + "'");
    }
  } else if (head == "adj") {
    e.kind = Expr::Kind::adj;
    e.args.push_back(parse(t));
  } else if (head == "mul" || head == "add") {
    e.kind = head == "mul" ? Expr::Kind::mul : Expr::Kind::add;
    while (t.peek() == '(') e.args.push_back(parse(t));
  } else if (head == "scal") {
    e.kind = Expr::Kind::scal;
    e.re = parse_rational(t.atom());
    e.im = parse_rational(t.atom());
    e.args.push_back(parse(t));
  } else if (head == "unit") {
    e.kind = Expr::Kind::unit;
  } else if (head == "iota" || head == "iota_sqrt" || head == "one_minus_iota_sqrt") {
    e.kind = Expr::Kind::literal;
    e.name = head;
  } else {
    throw parse_error("unknown node kind '" + head + "'");
  }
  t.expect(')');
  return e;
}

}  // namespace

Expr parse_expr(const std::string& text) {
  Tokenizer t{text};
  Expr e = parse(t);
  if (!t.at_end()) throw parse_error("trailing input after expression");
  return e;
}

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::gen:
      return "(gen " + std::to_string(e.index) + ")";
    case Expr::Kind::adj:
      return "(adj " + print_expr(e.args.at(0)) + ")";
    case Expr::Kind::mul:
    case Expr::Kind::add: {
      std::string s = e.kind == Expr::Kind::mul ? "(mul" : "(add";
      for (const auto& a : e.args) s += " " + print_expr(a);
      return s + ")";
    }
    case Expr::Kind::scal:
      return "(scal " + to_string(e.re) + " " + to_string(e.im) + " " + print_expr(e.args.at(0)) + ")";
    case Expr::Kind::unit:
      return "(unit)";
    case Expr::Kind::literal:
      return "(" + e.name + ")";
  }
  return "";
}

StarPoly to_starpoly(const Expr& e, const LiteralMap& literals) {
  switch (e.kind) {
    case Expr::Kind::gen:
      return StarPoly::gen(e.index);
    case Expr::Kind::adj:
      return to_starpoly(e.args.at(0), literals).adjoint();
    case Expr::Kind::mul: {
      StarPoly p = StarPoly::unit();
      for (const auto& a : e.args) p = p * to_starpoly(a, literals);
      return p;
    }
    case Expr::Kind::add: {
      StarPoly p;
      for (const auto& a : e.args) p += to_starpoly(a, literals);
      return p;
    }
    case Expr::Kind::scal:
      return GaussianRational(e.re, e.im) * to_starpoly(e.args.at(0), literals);
    case Expr::Kind::unit:
      return StarPoly::unit();
    case Expr::Kind::literal: {
      std::optional<std::uint64_t> g = literals ? literals(e.name) : std::nullopt;
      if (!g) throw parse_error("literal '" + e.name + "' is not available in this presentation");
      return StarPoly::gen(*g);
    }
  }
  return {};
}

Expr from_starpoly(const StarPoly& p) {
  Expr sum;
  sum.kind = Expr::Kind::add;
  for (const auto& [w, c] : p.terms()) {
    Expr prod;
    prod.kind = Expr::Kind::mul;
    for (const auto& l : w) {
      Expr g;
      g.kind = Expr::Kind::gen;
      g.index = l.gen;
      if (l.star) {
        Expr a;
        a.kind = Expr::Kind::adj;
        a.args.push_back(std::move(g));
        prod.args.push_back(std::move(a));
      } else {
        prod.args.push_back(std::move(g));
      }
    }
    Expr s;
    s.kind = Expr::Kind::scal;
    s.re = c.re;
    s.im = c.im;
    s.args.push_back(std::move(prod));
    sum.args.push_back(std::move(s));
  }
  return sum;
}

}  // namespace cstar
