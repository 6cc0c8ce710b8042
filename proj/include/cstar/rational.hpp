#ifndef CSTAR_RATIONAL_HPP
#define CSTAR_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace cstar {

using Integer = mpz_class;
using Rational = mpq_class;  // always kept canonical

Rational make_rational(const Integer& num, const Integer& den);
Rational pow2(long e);

// "a", "-a/b"; whitespace not allowed inside
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// smallest c with 2^c >= q, for q > 0
long ceil_log2(const Rational& q);
// largest f with 2^f <= q, for q > 0
long floor_log2(const Rational& q);

Integer isqrt(const Integer& n);
bool is_prime(const Integer& n);  // deterministic trial division
Integer next_prime(const Integer& n);  // least prime > n

Rational abs(const Rational& q);

}  // namespace cstar

#endif
