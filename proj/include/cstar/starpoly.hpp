#ifndef CSTAR_STARPOLY_HPP
#define CSTAR_STARPOLY_HPP

#include "cstar/errors.hpp"
#include "cstar/gaussian.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace cstar {

struct Letter {
  std::uint64_t gen = 0;
  bool star = false;
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

// length first, then lexicographic on (gen, star) with false < true
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

Word adjoint(const Word& w);

class StarPoly {
 public:
  using Terms = std::map<Word, GaussianRational, WordLess>;

  StarPoly() = default;
  static StarPoly unit() { return scalar(1); }
  static StarPoly scalar(const GaussianRational& c);
  static StarPoly gen(std::uint64_t g, bool star = false);
  static StarPoly word(const Word& w, const GaussianRational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::size_t degree() const;
  std::set<std::uint64_t> generators() const;
  // coefficient of the empty word
  GaussianRational constant_term() const;

  void add_term(const Word& w, const GaussianRational& c);

  StarPoly adjoint() const;
  StarPoly& operator+=(const StarPoly& o);
  StarPoly& operator-=(const StarPoly& o);
  StarPoly& operator*=(const GaussianRational& c);

  // replace every letter g by image(g) (and g* by image(g)*)
  StarPoly substitute(const std::function<StarPoly(std::uint64_t)>& image) const;
  // rename generator indices; the map must be injective to keep terms apart
  StarPoly relabel(const std::function<std::uint64_t(std::uint64_t)>& f) const;

  // sum of |coefficient| * prod bound(letter), as a rational upper bound on the norm
  Rational norm_bound(const std::function<Rational(std::uint64_t)>& gen_bound) const;

  friend bool operator==(const StarPoly& a, const StarPoly& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

StarPoly operator+(StarPoly a, const StarPoly& b);
StarPoly operator-(StarPoly a, const StarPoly& b);
StarPoly operator-(const StarPoly& a);
StarPoly operator*(const StarPoly& a, const StarPoly& b);
StarPoly operator*(const GaussianRational& c, StarPoly a);

std::string debug_string(const StarPoly& p);

// Homomorphic evaluation. The backend supplies
//   element identity(), zero(), generator(g) (throws if g is unassigned),
//   adjoint(x), mul(x, y), add(x, y), scale(c, x).
template <class Backend>
auto poly_apply(const StarPoly& p, const Backend& b) -> decltype(b.identity()) {
  using E = decltype(b.identity());
  std::map<Letter, E> cache;
  auto letter = [&](const Letter& l) -> const E& {
    auto it = cache.find(l);
    if (it != cache.end()) return it->second;
    E g = b.generator(l.gen);
    if (l.star) g = b.adjoint(g);
    return cache.emplace(l, std::move(g)).first->second;
  };
  E acc = b.zero();
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    E prod = w.empty() ? b.identity() : letter(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) prod = b.mul(prod, letter(w[i]));
    E term = b.scale(c, prod);
    acc = first ? std::move(term) : b.add(acc, term);
    first = false;
  }
  return acc;
}

// Adapter for assignment maps: generator index -> element.
template <class Ops, class E>
struct AssignedBackend {
  const Ops& ops;
  const std::map<std::uint64_t, E>& assignment;
  E identity() const { return ops.identity(); }
  E zero() const { return ops.zero(); }
  E generator(std::uint64_t g) const {
    auto it = assignment.find(g);
    if (it == assignment.end())
      throw precondition_error("no assignment for generator index " + std::to_string(g));
    return it->second;
  }
  E adjoint(const E& x) const { return ops.adjoint(x); }
  E mul(const E& x, const E& y) const { return ops.mul(x, y); }
  E add(const E& x, const E& y) const { return ops.add(x, y); }
  E scale(const GaussianRational& c, const E& x) const { return ops.scale(c, x); }
};

}  // namespace cstar

#endif
