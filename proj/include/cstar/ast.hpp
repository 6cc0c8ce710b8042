#ifndef CSTAR_AST_HPP
#define CSTAR_AST_HPP

#include "cstar/starpoly.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cstar {

// Textual syntax for rational points, as s-expressions:
//   (gen N)  (adj X)  (mul X ...)  (add X ...)  (scal RE IM X)  (unit)
//   (iota)  (iota_sqrt)  (one_minus_iota_sqrt)
// RE and IM are exact fractions such as -3/4. (mul) is the unit, (add) is 0.
struct Expr {
  enum class Kind { gen, adj, mul, add, scal, unit, literal };
  Kind kind = Kind::unit;
  std::uint64_t index = 0;  // gen
  Rational re, im;          // scal
  std::string name;         // literal
  std::vector<Expr> args;

  friend bool operator==(const Expr&, const Expr&) = default;
};

Expr parse_expr(const std::string& text);
std::string print_expr(const Expr& e);

// Maps a function literal name to a generator index of the ambient
// presentation; returns nullopt if the literal is not available there.
using LiteralMap = std::function<std::optional<std::uint64_t>(const std::string&)>;

StarPoly to_starpoly(const Expr& e, const LiteralMap& literals = {});
Expr from_starpoly(const StarPoly& p);

}  // namespace cstar

#endif
