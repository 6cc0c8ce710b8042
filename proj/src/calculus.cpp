#include "cstar/calculus.hpp"

namespace cstar {

long taylor_order(const Rational& delta) {
  if (delta <= 0 || delta > 1) throw precondition_error("taylor_order: delta must lie in (0, 1]");
  return ceil_log2(Rational(1) / delta) + 1;
}

Rational inverse_sqrt_coefficient(long j) {
  // binom(-1/2, j) = prod_{i<j} (-1/2 - i) / (i + 1)
  Rational c = 1;
  for (long i = 0; i < j; ++i) c *= make_rational(-(2 * i + 1), 2 * (i + 1));
  return c;
}

RationalMatrix taylor_inverse_sqrt(const RationalMatrix& x, long N) {
  std::size_t n = x.dim();
  RationalMatrix y = x - RationalMatrix::identity(n);
  RationalMatrix acc = RationalMatrix::scalar(n, inverse_sqrt_coefficient(N));
  for (long j = N - 1; j >= 0; --j) acc = y * acc + RationalMatrix::scalar(n, inverse_sqrt_coefficient(j));
  return acc;
}

Rational taylor_inverse_sqrt(const Rational& x, long N) {
  Rational y = x - 1, acc = inverse_sqrt_coefficient(N);
  for (long j = N - 1; j >= 0; --j) acc = y * acc + inverse_sqrt_coefficient(j);
  return acc;
}

AlmostUnitary make_almost_unitary(const RationalMatrix& a, const Rational& eps) {
  if (eps > make_rational(1, 2))
    throw precondition_error("almost unitary: eps > 1/2 leaves the Taylor domain [1/2, 3/2]");
  if (eps <= 0) throw precondition_error("almost unitary: eps must be positive");
  std::size_t n = a.dim();
  RationalMatrix one = RationalMatrix::identity(n);
  const long k = 40;
  if (matrix_norm(a.adjoint() * a - one, k).hi().cmp(eps) >= 0 || matrix_norm(a * a.adjoint() - one, k).hi().cmp(eps) >= 0)
    throw precondition_error("almost unitary: ||a*a - 1|| < eps not certified");
  // an exact unitary has norm exactly 1, which no enclosure can certify from above
  if (!a.is_unitary() && matrix_norm(a, k).hi().cmp(Rational(1)) > 0) throw precondition_error("almost unitary: ||a|| <= 1 not certified");
  return {a, eps};
}

OmegaResult omega_n(const AlmostUnitary& au, long n) {
  if (n < 0) throw precondition_error("omega_n: n must be nonnegative");
  OmegaResult r;
  r.N = taylor_order(pow2(-n));
  r.w = au.a * taylor_inverse_sqrt(au.a.adjoint() * au.a, r.N);
  // ||omega(a) - w|| <= ||a|| sup_{|x-1| <= eps} |x^{-1/2} - s_N(x)| <= eps^{N+1} / (1 - eps)
  Rational e = au.eps, p = 1;
  for (long j = 0; j <= r.N; ++j) p *= e;
  r.error = p / (Rational(1) - e);
  if (r.error >= pow2(-n)) throw certification_error("omega_n: tail bound not below 2^-n");
  return r;
}

UnitaryPath::UnitaryPath(const RationalMatrix& u, const RationalMatrix& v, long k)
    : n_(u.dim()), hu_(schur_log(u, k)), hv_(schur_log(v, k)) {
  if (u.dim() != v.dim()) throw precondition_error("unitary path: dimension mismatch");
}

IntervalMatrix UnitaryPath::eval(const Rational& t, long k) const {
  if (t < 0 || t > 1) throw precondition_error("unitary path: t outside [0, 1]");
  precision_scope ps(std::max<long>(working_precision(), k + 64));
  DyadicInterval ti = DyadicInterval::from_rational(t);
  DyadicInterval si = DyadicInterval::from_rational(Rational(1) - t);
  IntervalMatrix a = ComplexInterval(DyadicInterval(0), si) * hu_.h;
  IntervalMatrix b = ComplexInterval(DyadicInterval(0), ti) * hv_.h;
  Dyadic ba = mul(hu_.norm_bound, si.hi(), MPFR_RNDU), bb = mul(hv_.norm_bound, ti.hi(), MPFR_RNDU);
  return matrix_exp(a, k + 2, ba) * matrix_exp(b, k + 2, bb);
}

}  // namespace cstar
