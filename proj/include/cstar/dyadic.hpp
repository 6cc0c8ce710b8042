#ifndef CSTAR_DYADIC_HPP
#define CSTAR_DYADIC_HPP

#include "cstar/rational.hpp"

#include <mpfr.h>

#include <string>

namespace cstar {

// Working precision (bits) used for rounded dyadic results. Thread local.
long working_precision();
void set_working_precision(long bits);

class precision_scope {
 public:
  explicit precision_scope(long bits);
  ~precision_scope();
  precision_scope(const precision_scope&) = delete;
  precision_scope& operator=(const precision_scope&) = delete;

 private:
  long saved_;
};

// m * 2^e, stored in an MPFR number. Every MPFR value is a dyadic, so the
// wrapper only has to manage the precision of results.
class Dyadic {
 public:
  Dyadic();
  Dyadic(long v);
  Dyadic(const Integer& mantissa, long exponent);
  Dyadic(const Dyadic& o);
  Dyadic(Dyadic&& o) noexcept;
  Dyadic& operator=(const Dyadic& o);
  Dyadic& operator=(Dyadic&& o) noexcept;
  ~Dyadic();

  static Dyadic from_double(double x);  // exact
  static Dyadic round(const Rational& q, mpfr_rnd_t rnd, long prec = working_precision());
  static Dyadic pow2(long e);

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  Rational to_rational() const;
  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const;
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  // normalized mantissa (odd or zero) and exponent
  void decompose(Integer& mantissa, long& exponent) const;
  // exact rendering "n" or "n/2^e" written as "n/d" in decimal
  std::string str() const;
  int cmp(const Dyadic& o) const { return mpfr_cmp(v_, o.v_); }
  int cmp(const Rational& q) const { return mpfr_cmp_q(v_, q.get_mpq_t()); }
  // 2^e with 2^e >= |x| (x != 0)
  long ceil_log2_abs() const;

 private:
  void init_prec(long prec);
  mpfr_t v_;
};

inline bool operator<(const Dyadic& a, const Dyadic& b) { return a.cmp(b) < 0; }
inline bool operator>(const Dyadic& a, const Dyadic& b) { return a.cmp(b) > 0; }
inline bool operator<=(const Dyadic& a, const Dyadic& b) { return a.cmp(b) <= 0; }
inline bool operator>=(const Dyadic& a, const Dyadic& b) { return a.cmp(b) >= 0; }
inline bool operator==(const Dyadic& a, const Dyadic& b) { return a.cmp(b) == 0; }
inline bool operator!=(const Dyadic& a, const Dyadic& b) { return a.cmp(b) != 0; }

// exact operations (precision grows as needed)
Dyadic exact_add(const Dyadic& a, const Dyadic& b);
Dyadic exact_sub(const Dyadic& a, const Dyadic& b);
Dyadic exact_mul(const Dyadic& a, const Dyadic& b);
Dyadic exact_neg(const Dyadic& a);
Dyadic exact_mul_2exp(const Dyadic& a, long e);

// directed rounding at the working precision
Dyadic add(const Dyadic& a, const Dyadic& b, mpfr_rnd_t rnd);
Dyadic sub(const Dyadic& a, const Dyadic& b, mpfr_rnd_t rnd);
Dyadic mul(const Dyadic& a, const Dyadic& b, mpfr_rnd_t rnd);
Dyadic div(const Dyadic& a, const Dyadic& b, mpfr_rnd_t rnd);
Dyadic sqrt(const Dyadic& a, mpfr_rnd_t rnd);
Dyadic min(const Dyadic& a, const Dyadic& b);
Dyadic max(const Dyadic& a, const Dyadic& b);
Dyadic abs(const Dyadic& a);

// Closed interval [lo, hi] with dyadic endpoints. Every operation rounds
// lo toward -inf and hi toward +inf at the working precision.
class DyadicInterval {
 public:
  DyadicInterval() = default;
  DyadicInterval(long v) : lo_(v), hi_(v) {}
  explicit DyadicInterval(const Dyadic& x) : lo_(x), hi_(x) {}
  DyadicInterval(Dyadic lo, Dyadic hi);

  static DyadicInterval from_rational(const Rational& q);
  static DyadicInterval from_double(double x) { return DyadicInterval(Dyadic::from_double(x)); }
  static DyadicInterval pi();
  static DyadicInterval hull(const DyadicInterval& a, const DyadicInterval& b);

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }

  Dyadic width() const;  // rounded up
  Dyadic mid() const;    // some dyadic inside, near the center
  Dyadic rad() const;    // r with [lo,hi] within [mid-r, mid+r], rounded up
  Dyadic mag() const;    // upper bound of |x|
  Dyadic mig() const;    // lower bound of |x|

  bool is_point() const { return lo_ == hi_; }
  bool contains(const Dyadic& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Rational& q) const { return lo_.cmp(q) <= 0 && hi_.cmp(q) >= 0; }
  bool contains(const DyadicInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool overlaps(const DyadicInterval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
  bool positive() const { return lo_.sign() > 0; }
  bool nonnegative() const { return lo_.sign() >= 0; }
  bool negative() const { return hi_.sign() < 0; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

  DyadicInterval& operator+=(const DyadicInterval& o);
  DyadicInterval& operator-=(const DyadicInterval& o);
  DyadicInterval& operator*=(const DyadicInterval& o);

  std::string str() const;

 private:
  Dyadic lo_;
  Dyadic hi_;
};

DyadicInterval operator+(const DyadicInterval& a, const DyadicInterval& b);
DyadicInterval operator-(const DyadicInterval& a, const DyadicInterval& b);
DyadicInterval operator-(const DyadicInterval& a);
DyadicInterval operator*(const DyadicInterval& a, const DyadicInterval& b);
DyadicInterval operator/(const DyadicInterval& a, const DyadicInterval& b);

DyadicInterval sqr(const DyadicInterval& a);
DyadicInterval sqrt(const DyadicInterval& a);  // a clipped to [0, inf)
DyadicInterval abs(const DyadicInterval& a);
DyadicInterval exp(const DyadicInterval& a);
DyadicInterval cos(const DyadicInterval& a);
DyadicInterval sin(const DyadicInterval& a);
DyadicInterval atan(const DyadicInterval& a);
DyadicInterval mul_2exp(const DyadicInterval& a, long e);
DyadicInterval max(const DyadicInterval& a, const DyadicInterval& b);
DyadicInterval min(const DyadicInterval& a, const DyadicInterval& b);
// enclosure of [a.lo, a.hi] widened by r on both sides
DyadicInterval inflate(const DyadicInterval& a, const Dyadic& r);

}  // namespace cstar

#endif
