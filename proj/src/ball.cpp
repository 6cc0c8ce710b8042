#include "cstar/ball.hpp"

#include <cmath>

namespace cstar {

namespace {

constexpr double kUnit = 0x1p-53;

// |fl(AB) - AB| <= gamma(n) |A||B| entrywise for complex data; generous
// enough to also absorb the roundings in |.| and in the radius GEMMs.
double gamma(Eigen::Index n) { return 8.0 * double(n + 4) * kUnit; }

Eigen::MatrixXd upper_abs(const Eigen::MatrixXcd& m) {
  // hypot is accurate to within one ulp; the slack is absorbed by gamma
  return m.cwiseAbs();
}

}  // namespace

BallMatrix BallMatrix::identity(Eigen::Index n) {
  BallMatrix b(n, n);
  b.mid.setIdentity();
  return b;
}

BallMatrix BallMatrix::adjoint() const {
  BallMatrix b;
  b.mid = mid.adjoint();
  b.rad = rad.transpose();
  return b;
}

Ball to_ball(const ComplexInterval& z) {
  precision_scope ps(std::max<long>(working_precision(), 64));
  Dyadic re = z.re.mid(), im = z.im.mid();
  Ball b;
  b.mid = {re.to_double(MPFR_RNDN), im.to_double(MPFR_RNDN)};
  Dyadic dre = max(abs(sub(z.re.hi(), Dyadic::from_double(b.mid.real()), MPFR_RNDU)),
                   abs(sub(z.re.lo(), Dyadic::from_double(b.mid.real()), MPFR_RNDD)));
  Dyadic dim = max(abs(sub(z.im.hi(), Dyadic::from_double(b.mid.imag()), MPFR_RNDU)),
                   abs(sub(z.im.lo(), Dyadic::from_double(b.mid.imag()), MPFR_RNDD)));
  b.rad = round_up(add(dre, dim, MPFR_RNDU).to_double(MPFR_RNDU));
  return b;
}

BallMatrix ball_mul(const BallMatrix& a, const BallMatrix& b) {
  const Eigen::Index n = a.cols();
  const double g = gamma(n);
  BallMatrix c;
  c.mid.noalias() = a.mid * b.mid;
  Eigen::MatrixXd aa = upper_abs(a.mid), ab = upper_abs(b.mid);
  Eigen::MatrixXd rb = b.rad + g * ab;
  Eigen::MatrixXd r;
  r.noalias() = aa * rb;
  Eigen::MatrixXd s = ab + b.rad;
  r.noalias() += a.rad * s;
  const double factor = 1.0 + g;
  const double floor = double(n + 1) * 0x1p-500;
  c.rad = (r.array() * factor + floor).matrix();
  return c;
}

BallMatrix ball_add(const BallMatrix& a, const BallMatrix& b) {
  BallMatrix c;
  c.mid = a.mid + b.mid;
  c.rad = ((a.rad + b.rad).array() * (1.0 + 8 * kUnit) + 4 * kUnit * c.mid.cwiseAbs().array() + 0x1p-500).matrix();
  return c;
}

BallMatrix ball_sub(const BallMatrix& a, const BallMatrix& b) {
  BallMatrix c;
  c.mid = a.mid - b.mid;
  c.rad = ((a.rad + b.rad).array() * (1.0 + 8 * kUnit) + 4 * kUnit * c.mid.cwiseAbs().array() + 0x1p-500).matrix();
  return c;
}

BallMatrix ball_scale(std::complex<double> z, const BallMatrix& a) {
  BallMatrix c;
  c.mid = z * a.mid;
  const double az = round_up(std::abs(z));
  c.rad = (a.rad.array() * az * (1.0 + 8 * kUnit) + 8 * kUnit * c.mid.cwiseAbs().array() + 0x1p-500).matrix();
  return c;
}

BallMatrix ball_div(const BallMatrix& a, double d) {
  BallMatrix c;
  c.mid = a.mid / d;
  c.rad = (a.rad.array() / d * (1.0 + 8 * kUnit) + 8 * kUnit * c.mid.cwiseAbs().array() + 0x1p-500).matrix();
  return c;
}

double ball_frobenius_upper(const BallMatrix& a) {
  Eigen::ArrayXXd m = a.mid.cwiseAbs().array() + a.rad.array();
  double s = (m * m).sum();
  return round_up(std::sqrt(round_up(s * (1.0 + double(m.size() + 2) * kUnit * 2))));
}

double ball_distance_frobenius(const BallMatrix& a, const Eigen::MatrixXcd& y) {
  Eigen::ArrayXXd m = (a.mid - y).cwiseAbs().array() * (1.0 + 4 * kUnit) + a.rad.array();
  double s = (m * m).sum();
  return round_up(std::sqrt(round_up(s * (1.0 + double(m.size() + 2) * kUnit * 2))));
}

bool ball_contains(const BallMatrix& a, const Eigen::MatrixXcd& y) {
  // |mid - y| computed with one subtraction and a hypot; shrink rad slightly
  Eigen::ArrayXXd d = (a.mid - y).cwiseAbs().array() * (1.0 + 8 * kUnit);
  return (d <= a.rad.array()).all();
}

ComplexInterval ball_trace(const BallMatrix& a) {
  precision_scope ps(std::max<long>(working_precision(), 128));
  ComplexInterval t(0);
  Dyadic r(0);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    t += ComplexInterval(DyadicInterval::from_double(a.mid(i, i).real()),
                         DyadicInterval::from_double(a.mid(i, i).imag()));
    r = add(r, Dyadic::from_double(a.rad(i, i)), MPFR_RNDU);
  }
  return inflate(t, r);
}

}  // namespace cstar
