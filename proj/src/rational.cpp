#include "cstar/rational.hpp"

#include "cstar/errors.hpp"

#include <cctype>

namespace cstar {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw precondition_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational pow2(long e) {
  Rational q(1);
  if (e >= 0)
    mpz_mul_2exp(q.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  return q;
}

static bool all_digits(const std::string& s, std::size_t from) {
  if (from >= s.size()) return false;
  for (std::size_t i = from; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

static Integer parse_integer(const std::string& s) {
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (!all_digits(s, start)) throw parse_error("not an integer: '" + s + "'");
  Integer z(s[0] == '+' ? s.substr(1) : s, 10);
  return z;
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s));
  Integer num = parse_integer(s.substr(0, slash));
  std::string ds = s.substr(slash + 1);
  if (!all_digits(ds, 0)) throw parse_error("bad denominator in '" + s + "'");
  Integer den(ds, 10);
  if (den == 0) throw parse_error("zero denominator in '" + s + "'");
  return make_rational(num, den);
}

std::string to_string(const Integer& z) { return z.get_str(10); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str(10);
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

long ceil_log2(const Rational& q) {
  if (q <= 0) throw precondition_error("ceil_log2 of nonpositive value");
  // 2^c >= num/den  <=>  2^c * den >= num
  long c = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2)) - 1;
  while (pow2(c) < q) ++c;
  while (pow2(c - 1) >= q) --c;
  return c;
}

long floor_log2(const Rational& q) {
  if (q <= 0) throw precondition_error("floor_log2 of nonpositive value");
  long c = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2)) + 1;
  while (pow2(c) > q) --c;
  while (pow2(c + 1) <= q) ++c;
  return c;
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw precondition_error("isqrt of negative value");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  Integer limit = isqrt(n);
  for (Integer d = 3; d <= limit; d += 2)
    if (n % d == 0) return false;
  return true;
}

Integer next_prime(const Integer& n) {
  Integer c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace cstar
