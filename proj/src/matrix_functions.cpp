#include "cstar/errors.hpp"
#include "cstar/matrix_ops.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace cstar {

namespace {

// upper bound for sum_{j > N} b^j / j!
Dyadic taylor_tail(const Dyadic& b, long N) {
  Dyadic term(1);
  for (long j = 1; j <= N + 1; ++j) term = div(mul(term, b, MPFR_RNDU), Dyadic(j), MPFR_RNDU);
  // geometric majorant of the remaining terms
  Dyadic ratio = div(b, Dyadic(N + 2), MPFR_RNDU);
  Dyadic denom = sub(Dyadic(1), ratio, MPFR_RNDD);
  return div(term, denom, MPFR_RNDU);
}

ComplexInterval point(const ComplexInterval& z) {
  return ComplexInterval(DyadicInterval(z.re.mid()), DyadicInterval(z.im.mid()));
}

IntervalMatrix point(const IntervalMatrix& m) { return m.mid(); }

IntervalMatrix from_eigen(const Eigen::MatrixXcd& q) {
  std::size_t n = q.rows();
  IntervalMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      r(i, j) = ComplexInterval(DyadicInterval::from_double(q(i, j).real()), DyadicInterval::from_double(q(i, j).imag()));
  return r;
}

// modified Gram-Schmidt on columns, in rounded (point) arithmetic
IntervalMatrix orthonormalize(const IntervalMatrix& q) {
  std::size_t n = q.dim();
  IntervalMatrix r = q;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      ComplexInterval dot;
      for (std::size_t l = 0; l < n; ++l) dot += mul_conj(r(l, j), r(l, i));
      dot = point(dot);
      for (std::size_t l = 0; l < n; ++l) r(l, j) = point(r(l, j) - dot * r(l, i));
    }
    DyadicInterval nrm(0);
    for (std::size_t l = 0; l < n; ++l) nrm += r(l, j).norm_sq();
    DyadicInterval s = sqrt(nrm);
    for (std::size_t l = 0; l < n; ++l) r(l, j) = point(r(l, j) / s);
  }
  return r;
}

Dyadic arg_approx(const ComplexInterval& z) {
  Dyadic a;
  mpfr_set_prec(a.raw(), static_cast<mpfr_prec_t>(working_precision()));
  Dyadic re = z.re.mid(), im = z.im.mid();
  mpfr_atan2(a.raw(), im.raw(), re.raw(), MPFR_RNDN);
  return a;
}

// distance from angle a to the lattice theta + 2 pi Z, approximately
double angular_distance(double a, double theta) {
  double d = std::fmod(a - theta, 2 * M_PI);
  if (d < 0) d += 2 * M_PI;
  return std::min(d, 2 * M_PI - d);
}

}  // namespace

IntervalMatrix matrix_exp(const IntervalMatrix& h, long k, const Dyadic& bound) {
  std::size_t n = h.dim();
  precision_scope ps(std::max<long>(working_precision(), k + 64));
  Dyadic b = bound.sign() > 0 ? bound : min(h.norm_upper_cheap(), h.frobenius_upper());
  if (b.is_zero()) {
    // H contains only the zero matrix
    return IntervalMatrix::identity(n);
  }
  long s = 0;
  Dyadic half = Dyadic::pow2(-1);
  Dyadic bs = b;
  while (bs > half) {
    ++s;
    bs = exact_mul_2exp(bs, -1);
  }
  IntervalMatrix x(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) = {mul_2exp(h(i, j).re, -s), mul_2exp(h(i, j).im, -s)};
  // squaring multiplies an error tau by about 2^s e^b
  Dyadic target = Dyadic::pow2(-(k + s + 8 + static_cast<long>(std::ceil(b.to_double(MPFR_RNDU) * 1.5))));
  long N = 1;
  while (taylor_tail(bs, N) > target) ++N;
  Dyadic tau = taylor_tail(bs, N);

  IntervalMatrix p = IntervalMatrix::identity(n);
  for (long j = N; j >= 1; --j) {
    IntervalMatrix xp = x * p;
    DyadicInterval inv_j = DyadicInterval(1) / DyadicInterval(j);
    p = IntervalMatrix::identity(n) + ComplexInterval(inv_j) * xp;
  }
  p = inflate(p, tau);
  for (long i = 0; i < s; ++i) p = p * p;
  return p;
}

SchurLogResult schur_log(const RationalMatrix& u, long k) {
  std::size_t n = u.dim();
  if (n == 0) throw precondition_error("schur_log of an empty matrix");
  if (!u.is_unitary()) throw precondition_error("schur_log requires an exactly unitary rational matrix");
  long prec = std::max<long>(working_precision(), 2 * k + 96);
  precision_scope ps(prec);

  IntervalMatrix U(u);
  Eigen::MatrixXcd ud(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ud(i, j) = {u(i, j).re.get_d(), u(i, j).im.get_d()};
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(ud);
  IntervalMatrix q = orthonormalize(from_eigen(schur.matrixU()));

  // first-order diagonalization sweeps; u is normal, so the Schur form is diagonal
  Dyadic tiny = Dyadic::pow2(-(prec - 24));
  Dyadic cluster = Dyadic::pow2(-(prec / 2));
  for (int sweep = 0; sweep < 12; ++sweep) {
    IntervalMatrix lam = point(q.adjoint() * U * q);
    Dyadic off(0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off = max(off, lam(i, j).abs_upper());
    if (off < tiny) break;
    IntervalMatrix e = IntervalMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        ComplexInterval gap = lam(j, j) - lam(i, i);
        if (gap.abs_upper() < cluster) continue;
        // lam_ij / gap
        DyadicInterval g2 = gap.norm_sq();
        e(i, j) = point(mul_conj(lam(i, j), gap) / g2);
      }
    q = orthonormalize(point(q * e));
  }
  IntervalMatrix lam = q.adjoint() * U * q;
  std::vector<Dyadic> alpha(n);
  for (std::size_t j = 0; j < n; ++j) alpha[j] = arg_approx(lam(j, j));

  // Q*Q - 1 controls how far QPhiQ* is from a unitary conjugate of Phi
  IntervalMatrix qq = q.adjoint() * q - IntervalMatrix::identity(n);
  Dyadic eta = qq.frobenius_upper();
  DyadicInterval pi = DyadicInterval::pi();
  DyadicInterval two_pi = mul_2exp(pi, 1);

  // theta = -m / 2^s, scanning from just below 0 downwards
  for (long s = 4; s <= 40; ++s) {
    long count = std::min<long>(6L << s, 4096);
    for (long m = 1; m <= count; ++m) {
      Rational theta = make_rational(Integer(-m), Integer(pow2(s).get_num()));
      double th = theta.get_d();
      double margin = std::ldexp(1.0, -static_cast<int>(s) - 1);
      bool ok = true;
      for (const auto& a : alpha)
        if (angular_distance(a.to_double(), th) < margin) ok = false;
      if (!ok) continue;

      DyadicInterval thi = DyadicInterval::from_rational(theta);
      DyadicInterval top = thi + two_pi;
      std::vector<Dyadic> phi(n);
      for (std::size_t j = 0; j < n; ++j) {
        Dyadic a = alpha[j];
        if (DyadicInterval(a).hi() < thi.hi()) a = add(a, two_pi.mid(), MPFR_RNDN);
        if (a >= top.lo()) a = sub(a, two_pi.mid(), MPFR_RNDN);
        phi[j] = a;
      }
      IntervalMatrix h(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
          ComplexInterval acc;
          for (std::size_t l = 0; l < n; ++l) acc += DyadicInterval(phi[l]) * mul_conj(q(i, l), q(j, l));
          h(i, j) = acc;
        }
      h = h.hermitian_part_upper();
      Dyadic phimax(0);
      for (const auto& p : phi) phimax = max(phimax, abs(p));
      Dyadic delta = mul(mul(eta, add(Dyadic(2), eta, MPFR_RNDU), MPFR_RNDU), phimax, MPFR_RNDU);
      delta = add(delta, mul(Dyadic(2), h.radius_frobenius(), MPFR_RNDU), MPFR_RNDU);
      SchurLogResult r;
      r.theta = theta;
      bool inside = true;
      for (const auto& p : phi) {
        DyadicInterval ev = inflate(DyadicInterval(p), delta);
        if (!(thi.hi() <= ev.lo() && ev.hi() < top.lo())) inside = false;
        r.eigenvalues.push_back(ev);
      }
      if (!inside) continue;
      IntervalMatrix ih = ComplexInterval(DyadicInterval(0), DyadicInterval(1)) * h;
      Dyadic hb = add(phimax, delta, MPFR_RNDU);
      IntervalMatrix e = matrix_exp(ih, k + 8, hb);
      r.exp_error = (e - U).frobenius_upper();
      if (r.exp_error >= Dyadic::pow2(-k))
        throw certification_error("schur_log: exp(ih) - u not certified below 2^-" + std::to_string(k));
      r.h = std::move(h);
      r.norm_bound = hb;
      return r;
    }
  }
  throw certification_error("schur_log: no admissible branch angle found");
}

}  // namespace cstar
