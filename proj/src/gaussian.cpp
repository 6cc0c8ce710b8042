#include "cstar/gaussian.hpp"

#include "cstar/errors.hpp"

namespace cstar {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  *this = *this * o;
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  Rational d = o.norm_sq();
  if (d == 0) throw precondition_error("division by zero");
  GaussianRational t = *this * o.conj();
  re = t.re / d;
  im = t.im / d;
  return *this;
}

GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
  if (a.im == 0 && b.im == 0) return GaussianRational(Rational(a.re * b.re));
  return {Rational(a.re * b.re - a.im * b.im), Rational(a.re * b.im + a.im * b.re)};
}

GaussianRational operator-(const GaussianRational& a) { return {Rational(-a.re), Rational(-a.im)}; }

bool operator==(const GaussianRational& a, const GaussianRational& b) {
  return a.re == b.re && a.im == b.im;
}

GaussianRational parse_gaussian(const std::string& in) {
  std::string s;
  for (char c : in)
    if (c != ' ') s += c;
  if (s.empty()) throw parse_error("empty complex literal");
  if (s.back() != 'i') return GaussianRational(parse_rational(s));
  std::string body = s.substr(0, s.size() - 1);
  // split at the last sign that is not leading
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  std::string re_part = split == std::string::npos ? "" : body.substr(0, split);
  std::string im_part = split == std::string::npos ? body : body.substr(split);
  Rational im;
  if (im_part.empty() || im_part == "+")
    im = 1;
  else if (im_part == "-")
    im = -1;
  else
    im = parse_rational(im_part);
  Rational re = re_part.empty() ? Rational(0) : parse_rational(re_part);
  return {re, im};
}

std::string to_string(const GaussianRational& z) {
  if (z.im == 0) return to_string(z.re);
  std::string im = to_string(z.im);
  if (z.re == 0) return im + "i";
  if (z.im > 0) im = "+" + im;
  return to_string(z.re) + im + "i";
}

Rational abs_upper(const GaussianRational& z) { return abs(z.re) + abs(z.im); }

}  // namespace cstar
