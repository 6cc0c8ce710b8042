#ifndef CSTAR_GAUSSIAN_HPP
#define CSTAR_GAUSSIAN_HPP

#include "cstar/rational.hpp"

#include <string>

namespace cstar {

struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(long r) : re(r), im(0) {}
  GaussianRational(const Rational& r) : re(r), im(0) {}
  GaussianRational(const Rational& r, const Rational& i) : re(r), im(i) {}

  static GaussianRational i_unit() { return {0, 1}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  GaussianRational conj() const { return {re, -im}; }
  Rational norm_sq() const { return re * re + im * im; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);
};

GaussianRational operator+(GaussianRational a, const GaussianRational& b);
GaussianRational operator-(GaussianRational a, const GaussianRational& b);
GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator/(GaussianRational a, const GaussianRational& b);
GaussianRational operator-(const GaussianRational& a);
bool operator==(const GaussianRational& a, const GaussianRational& b);
inline bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

// "a/b+c/di" style; also accepts "a/b", "c/di", "i", "-i"
GaussianRational parse_gaussian(const std::string& s);
std::string to_string(const GaussianRational& z);

// upper bound on |z| as a rational: |re| + |im|
Rational abs_upper(const GaussianRational& z);

}  // namespace cstar

#endif
