#include "cstar/starpoly.hpp"

namespace cstar {

Word adjoint(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (auto& l : r) l.star = !l.star;
  return r;
}

StarPoly StarPoly::scalar(const GaussianRational& c) {
  StarPoly p;
  p.add_term({}, c);
  return p;
}

StarPoly StarPoly::gen(std::uint64_t g, bool star) {
  StarPoly p;
  p.add_term({Letter{g, star}}, 1);
  return p;
}

StarPoly StarPoly::word(const Word& w, const GaussianRational& c) {
  StarPoly p;
  p.add_term(w, c);
  return p;
}

std::size_t StarPoly::degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }

std::set<std::uint64_t> StarPoly::generators() const {
  std::set<std::uint64_t> s;
  for (const auto& t : terms_)
    for (const auto& l : t.first) s.insert(l.gen);
  return s;
}

GaussianRational StarPoly::constant_term() const {
  auto it = terms_.find(Word{});
  return it == terms_.end() ? GaussianRational(0) : it->second;
}

void StarPoly::add_term(const Word& w, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

StarPoly StarPoly::adjoint() const {
  StarPoly r;
  for (const auto& [w, c] : terms_) r.terms_.emplace(cstar::adjoint(w), c.conj());
  return r;
}

StarPoly& StarPoly::operator+=(const StarPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

StarPoly& StarPoly::operator-=(const StarPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

StarPoly& StarPoly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

StarPoly StarPoly::substitute(const std::function<StarPoly(std::uint64_t)>& image) const {
  std::map<Letter, StarPoly> cache;
  auto letter = [&](const Letter& l) -> const StarPoly& {
    auto it = cache.find(l);
    if (it != cache.end()) return it->second;
    StarPoly g = image(l.gen);
    if (l.star) g = g.adjoint();
    return cache.emplace(l, std::move(g)).first->second;
  };
  StarPoly out;
  for (const auto& [w, c] : terms_) {
    StarPoly prod = StarPoly::scalar(c);
    for (const auto& l : w) prod = prod * letter(l);
    out += prod;
  }
  return out;
}

StarPoly StarPoly::relabel(const std::function<std::uint64_t(std::uint64_t)>& f) const {
  StarPoly out;
  for (const auto& [w, c] : terms_) {
    Word v = w;
    for (auto& l : v) l.gen = f(l.gen);
    out.add_term(v, c);
  }
  return out;
}

Rational StarPoly::norm_bound(const std::function<Rational(std::uint64_t)>& gen_bound) const {
  Rational total = 0;
  std::map<std::uint64_t, Rational> cache;
  for (const auto& [w, c] : terms_) {
    Rational t = abs_upper(c);
    for (const auto& l : w) {
      auto it = cache.find(l.gen);
      if (it == cache.end()) it = cache.emplace(l.gen, gen_bound(l.gen)).first;
      t *= it->second;
    }
    total += t;
  }
  return total;
}

StarPoly operator+(StarPoly a, const StarPoly& b) { return a += b; }
StarPoly operator-(StarPoly a, const StarPoly& b) { return a -= b; }
StarPoly operator-(const StarPoly& a) { return GaussianRational(-1) * a; }

StarPoly operator*(const StarPoly& a, const StarPoly& b) {
  StarPoly r;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add_term(w, ca * cb);
    }
  return r;
}

StarPoly operator*(const GaussianRational& c, StarPoly a) { return a *= c; }

std::string debug_string(const StarPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& [w, c] : p.terms()) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(c) + ")";
    for (const auto& l : w) s += " g" + std::to_string(l.gen) + (l.star ? "*" : "");
  }
  return s;
}

}  // namespace cstar
