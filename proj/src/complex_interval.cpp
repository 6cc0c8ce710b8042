#include "cstar/complex_interval.hpp"

namespace cstar {

ComplexInterval ComplexInterval::from(const GaussianRational& z) {
  return {DyadicInterval::from_rational(z.re), DyadicInterval::from_rational(z.im)};
}

ComplexInterval ComplexInterval::expi(const DyadicInterval& x) { return {cos(x), sin(x)}; }

static Dyadic hypot_up(const Dyadic& a, const Dyadic& b) {
  return sqrt(add(mul(a, a, MPFR_RNDU), mul(b, b, MPFR_RNDU), MPFR_RNDU), MPFR_RNDU);
}

Dyadic ComplexInterval::abs_upper() const {
  if (im.is_point() && im.lo().is_zero()) return re.mag();
  return hypot_up(re.mag(), im.mag());
}

Dyadic ComplexInterval::rad() const {
  Dyadic r = re.rad(), i = im.rad();
  if (i.is_zero()) return r;
  if (r.is_zero()) return i;
  return hypot_up(r, i);
}

ComplexInterval& ComplexInterval::operator+=(const ComplexInterval& o) {
  re += o.re;
  im += o.im;
  return *this;
}

ComplexInterval& ComplexInterval::operator-=(const ComplexInterval& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) { return {a.re + b.re, a.im + b.im}; }
ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) { return {a.re - b.re, a.im - b.im}; }
ComplexInterval operator-(const ComplexInterval& a) { return {-a.re, -a.im}; }

static bool is_zero(const DyadicInterval& x) { return x.is_point() && x.lo().is_zero(); }

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
  if (is_zero(a.im) && is_zero(b.im)) return {a.re * b.re, DyadicInterval(0)};
  if (is_zero(a.im)) return {a.re * b.re, a.re * b.im};
  if (is_zero(b.im)) return {a.re * b.re, a.im * b.re};
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexInterval operator*(const DyadicInterval& a, const ComplexInterval& b) { return {a * b.re, a * b.im}; }
ComplexInterval operator/(const ComplexInterval& a, const DyadicInterval& b) { return {a.re / b, a.im / b}; }

ComplexInterval mul_conj(const ComplexInterval& a, const ComplexInterval& b) { return a * b.conj(); }

ComplexInterval hull(const ComplexInterval& a, const ComplexInterval& b) {
  return {DyadicInterval::hull(a.re, b.re), DyadicInterval::hull(a.im, b.im)};
}

ComplexInterval inflate(const ComplexInterval& a, const Dyadic& r) { return {inflate(a.re, r), inflate(a.im, r)}; }

}  // namespace cstar
