#ifndef CSTAR_COMPLEX_INTERVAL_HPP
#define CSTAR_COMPLEX_INTERVAL_HPP

#include "cstar/dyadic.hpp"
#include "cstar/gaussian.hpp"

namespace cstar {

// Rectangular complex enclosure.
struct ComplexInterval {
  DyadicInterval re;
  DyadicInterval im;

  ComplexInterval() = default;
  ComplexInterval(long v) : re(v), im(0) {}
  ComplexInterval(DyadicInterval r) : re(std::move(r)), im(0) {}
  ComplexInterval(DyadicInterval r, DyadicInterval i) : re(std::move(r)), im(std::move(i)) {}

  static ComplexInterval from(const GaussianRational& z);
  // e^{i x}
  static ComplexInterval expi(const DyadicInterval& x);

  ComplexInterval conj() const { return {re, -im}; }
  DyadicInterval norm_sq() const { return sqr(re) + sqr(im); }
  DyadicInterval abs() const { return sqrt(norm_sq()); }
  Dyadic abs_upper() const;  // upper bound for every |z| in the box
  Dyadic rad() const;        // radius of a disc around the box center covering the box
  bool contains(const GaussianRational& z) const { return re.contains(z.re) && im.contains(z.im); }
  bool contains(const ComplexInterval& z) const { return re.contains(z.re) && im.contains(z.im); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }

  ComplexInterval& operator+=(const ComplexInterval& o);
  ComplexInterval& operator-=(const ComplexInterval& o);
};

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator-(const ComplexInterval& a);
ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator*(const DyadicInterval& a, const ComplexInterval& b);
ComplexInterval operator/(const ComplexInterval& a, const DyadicInterval& b);
ComplexInterval hull(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval inflate(const ComplexInterval& a, const Dyadic& r);
// a * conj(b)
ComplexInterval mul_conj(const ComplexInterval& a, const ComplexInterval& b);

}  // namespace cstar

#endif
