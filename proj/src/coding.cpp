#include "cstar/coding.hpp"

#include <cmath>

#include <limits>
#include <optional>

namespace cstar {

Integer pair(const Integer& m, const Integer& p) {
  if (m < 0 || p < 0) throw precondition_error("pair of negative value");
  Integer s = m + p;
  return s * (s + 1) / 2 + p;
}

std::pair<Integer, Integer> unpair(const Integer& n) {
  if (n < 0) throw precondition_error("unpair of negative value");
  // largest w with w(w+1)/2 <= n
  Integer w = (isqrt(8 * n + 1) - 1) / 2;
  Integer t = w * (w + 1) / 2;
  Integer p = n - t;
  return {w - p, p};
}

std::uint64_t pair64(std::uint64_t m, std::uint64_t p) {
  unsigned __int128 s = static_cast<unsigned __int128>(m) + p;
  unsigned __int128 r = s * (s + 1) / 2 + p;
  if (r > UINT64_MAX) throw precondition_error("pair64 overflow");
  return static_cast<std::uint64_t>(r);
}

std::pair<std::uint64_t, std::uint64_t> unpair64(std::uint64_t n) {
  // w = largest with w(w+1)/2 <= n; the double estimate is off by at most one
  std::uint64_t w = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(n) + 1.0) - 1.0) / 2.0);
  auto tri = [](std::uint64_t x) { return static_cast<unsigned __int128>(x) * (x + 1) / 2; };
  while (w > 0 && tri(w) > n) --w;
  while (tri(w + 1) <= n) ++w;
  std::uint64_t p = n - static_cast<std::uint64_t>(tri(w));
  return {w - p, p};
}

namespace {

class BitWriter {
 public:
  void gamma(const Integer& x) {
    Integer v = x + 1;
    std::size_t len = mpz_sizeinbase(v.get_mpz_t(), 2);
    for (std::size_t i = 1; i < len; ++i) bits_.push_back(false);
    for (std::size_t i = len; i-- > 0;) bits_.push_back(mpz_tstbit(v.get_mpz_t(), i) != 0);
  }
  void gamma(unsigned long x) { gamma(Integer(x)); }

  Code finish() const {
    Code c = 0;
    std::size_t n = bits_.size();
    mpz_setbit(c.get_mpz_t(), n);
    for (std::size_t i = 0; i < n; ++i)
      if (bits_[i]) mpz_setbit(c.get_mpz_t(), n - 1 - i);
    return c;
  }

 private:
  std::vector<bool> bits_;
};

class BitReader {
 public:
  explicit BitReader(const Code& c) : c_(c) {
    std::size_t b = mpz_sizeinbase(c.get_mpz_t(), 2);
    remaining_ = b - 1;  // skip the marker
  }
  std::size_t remaining() const { return remaining_; }

  std::optional<Integer> gamma() {
    std::size_t zeros = 0;
    while (true) {
      if (remaining_ == 0) return std::nullopt;
      bool bit = next();
      if (bit) break;
      ++zeros;
    }
    if (zeros > remaining_) return std::nullopt;
    Integer v = 1;
    for (std::size_t i = 0; i < zeros; ++i) {
      v *= 2;
      if (next()) v += 1;
    }
    return Integer(v - 1);
  }

  std::optional<std::uint64_t> gamma64() {
    auto v = gamma();
    if (!v || !v->fits_ulong_p()) return std::nullopt;
    return v->get_ui();
  }

 private:
  bool next() { return mpz_tstbit(c_.get_mpz_t(), --remaining_) != 0; }
  const Code& c_;
  std::size_t remaining_;
};

Integer zigzag(const Integer& z) { return z >= 0 ? Integer(2 * z) : Integer(-2 * z - 1); }

Integer unzigzag(const Integer& u) { return u % 2 == 0 ? Integer(u / 2) : Integer(-(u + 1) / 2); }

void write_rational(BitWriter& w, const Rational& q) {
  w.gamma(zigzag(q.get_num()));
  w.gamma(Integer(q.get_den() - 1));
}

std::optional<Rational> read_rational(BitReader& r) {
  auto u = r.gamma();
  if (!u) return std::nullopt;
  auto dm1 = r.gamma();
  if (!dm1) return std::nullopt;
  Integer num = unzigzag(*u), den = *dm1 + 1;
  Integer g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) return std::nullopt;  // includes 0 with den != 1
  return Rational(num, den);
}

std::optional<StarPoly> decode_stream(const Code& c) {
  BitReader r(c);
  auto count = r.gamma();
  if (!count || *count < 1 || *count > r.remaining()) return std::nullopt;
  unsigned long terms = count->get_ui();
  StarPoly p;
  std::optional<Word> prev;
  WordLess less;
  for (unsigned long t = 0; t < terms; ++t) {
    auto len = r.gamma();
    if (!len || *len > r.remaining()) return std::nullopt;
    Word w;
    for (unsigned long i = 0; i < len->get_ui(); ++i) {
      auto code = r.gamma64();
      if (!code) return std::nullopt;
      w.push_back(Letter{*code / 2, (*code % 2) == 1});
    }
    auto re = read_rational(r);
    if (!re) return std::nullopt;
    auto im = read_rational(r);
    if (!im) return std::nullopt;
    GaussianRational coeff(*re, *im);
    if (coeff.is_zero()) return std::nullopt;
    if (prev && !less(*prev, w)) return std::nullopt;
    p.add_term(w, coeff);
    prev = std::move(w);
  }
  if (r.remaining() != 0) return std::nullopt;
  return p;
}

}  // namespace

Code encode_poly(const StarPoly& p) {
  if (p.is_zero()) return Code(0);
  BitWriter w;
  w.gamma(static_cast<unsigned long>(p.size()));
  for (const auto& [word, c] : p.terms()) {
    w.gamma(static_cast<unsigned long>(word.size()));
    for (const auto& l : word) {
      Integer code = Integer(std::to_string(l.gen)) * 2 + (l.star ? 1 : 0);
      w.gamma(code);
    }
    write_rational(w, c.re);
    write_rational(w, c.im);
  }
  return w.finish();
}

StarPoly decode_poly(const Code& c) {
  if (c <= 1) return StarPoly();
  auto p = decode_stream(c);
  return p ? *p : StarPoly();
}

}  // namespace cstar
