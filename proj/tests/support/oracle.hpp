#ifndef CSTAR_TEST_ORACLE_HPP
#define CSTAR_TEST_ORACLE_HPP

// Independent 200-bit reference computations for the tests. Complex n x n
// matrices are handled through the real 2n x 2n embedding
// [[Re, -Im], [Im, Re]], which is a *-homomorphism, so a cyclic Jacobi
// eigensolver for real symmetric matrices is all that is needed.

#include "cstar/dyadic.hpp"
#include "cstar/interval_matrix.hpp"
#include "cstar/rational_matrix.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <functional>
#include <vector>

namespace oracle {

using Big = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<200>,
                                          boost::multiprecision::et_off>;

struct Real {
  std::size_t n = 0;
  std::vector<Big> a;
  explicit Real(std::size_t n_ = 0) : n(n_), a(n_ * n_, Big(0)) {}
  Big& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const Big& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

inline Big big(const cstar::Rational& q) {
  Big x;
  mpfr_set_q(x.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return x;
}

inline Real operator*(const Real& x, const Real& y) {
  Real r(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t l = 0; l < x.n; ++l) {
      if (x(i, l) == 0) continue;
      for (std::size_t j = 0; j < x.n; ++j) r(i, j) += x(i, l) * y(l, j);
    }
  return r;
}

inline Real transpose(const Real& x) {
  Real r(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j) r(i, j) = x(j, i);
  return r;
}

inline Real embed(const cstar::RationalMatrix& m) {
  std::size_t n = m.dim();
  Real r(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Big re = big(m(i, j).re), im = big(m(i, j).im);
      r(i, j) = re;
      r(i + n, j + n) = re;
      r(i, j + n) = -im;
      r(i + n, j) = im;
    }
  return r;
}

// complex entry (i, j) of an embedded matrix
inline std::pair<Big, Big> entry(const Real& e, std::size_t i, std::size_t j) {
  std::size_t n = e.n / 2;
  return {e(i, j), e(i + n, j)};
}

// cyclic Jacobi: s = v diag(w) v^T
inline void jacobi(Real s, std::vector<Big>& w, Real& v) {
  std::size_t n = s.n;
  v = Real(n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1;
  Big eps = boost::multiprecision::pow(Big(2), -190);
  for (int sweep = 0; sweep < 100; ++sweep) {
    Big off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
    if (off < eps * eps) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (s(p, q) == 0) continue;
        Big tau = (s(q, q) - s(p, p)) / (2 * s(p, q));
        Big t = (tau >= 0 ? Big(1) : Big(-1)) / (abs(tau) + sqrt(1 + tau * tau));
        Big c = 1 / sqrt(1 + t * t), sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          Big skp = s(k, p), skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          Big spk = s(p, k), sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          Big vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
  }
  w.resize(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = s(i, i);
}

// f applied to a real symmetric matrix
inline Real apply(const Real& s, const std::function<Big(const Big&)>& f) {
  std::vector<Big> w;
  Real v;
  jacobi(s, w, v);
  Real d(s.n);
  for (std::size_t i = 0; i < s.n; ++i) d(i, i) = f(w[i]);
  return v * d * transpose(v);
}

// largest eigenvalue of a real symmetric matrix: Householder reduction to
// tridiagonal form, then Sturm-count bisection
inline Big lambda_max(Real a) {
  std::size_t n = a.n;
  if (n == 0) return Big(0);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    Big alpha = 0;
    for (std::size_t i = k + 1; i < n; ++i) alpha += a(i, k) * a(i, k);
    if (alpha == 0) continue;
    alpha = sqrt(alpha);
    if (a(k + 1, k) > 0) alpha = -alpha;
    std::vector<Big> v(n, Big(0));
    v[k + 1] = a(k + 1, k) - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
    Big vv = 0;
    for (std::size_t i = k + 1; i < n; ++i) vv += v[i] * v[i];
    if (vv == 0) continue;
    // A <- H A H with H = I - 2 v v^T / (v^T v)
    std::vector<Big> p(n, Big(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) p[i] += a(i, j) * v[j];
    for (auto& x : p) x = 2 * x / vv;
    Big kappa = 0;
    for (std::size_t i = k + 1; i < n; ++i) kappa += v[i] * p[i];
    kappa /= vv;
    std::vector<Big> q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = p[i] - kappa * v[i];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) -= v[i] * q[j] + q[i] * v[j];
  }
  std::vector<Big> d(n), e2(n, Big(0));
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i);
  for (std::size_t i = 1; i < n; ++i) e2[i] = a(i, i - 1) * a(i, i - 1);
  Big hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Big r = abs(d[i]);
    if (i > 0) r += abs(a(i, i - 1));
    if (i + 1 < n) r += abs(a(i + 1, i));
    hi = std::max(hi, r);
  }
  Big lo = -hi;
  Big tiny = boost::multiprecision::pow(Big(2), -400);
  auto below = [&](const Big& x) {
    std::size_t c = 0;
    Big q = d[0] - x;
    for (std::size_t i = 0;; ++i) {
      if (q == 0) q = tiny;
      if (q < 0) ++c;
      if (i + 1 == n) break;
      q = d[i + 1] - x - e2[i + 1] / q;
    }
    return c;
  };
  for (int it = 0; it < 210; ++it) {
    Big mid = (lo + hi) / 2;
    if (below(mid) == n)
      hi = mid;
    else
      lo = mid;
  }
  return (lo + hi) / 2;
}

inline Big spectral_norm(const Real& e) {
  Big mx = lambda_max(transpose(e) * e);
  return mx > 0 ? sqrt(mx) : Big(0);
}

inline Big spectral_norm(const cstar::RationalMatrix& m) { return spectral_norm(embed(m)); }

inline Real operator-(const Real& x, const Real& y) {
  Real r(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

// unitary polar factor a (a*a)^{-1/2}, embedded
inline Real polar_unitary(const cstar::RationalMatrix& a) {
  Real e = embed(a);
  return e * apply(transpose(e) * e, [](const Big& x) { return 1 / sqrt(x); });
}

inline bool contains(const cstar::DyadicInterval& iv, const Big& x) {
  Big lo, hi;
  mpfr_set(lo.backend().data(), iv.lo().raw(), MPFR_RNDD);
  mpfr_set(hi.backend().data(), iv.hi().raw(), MPFR_RNDU);
  // the oracle itself is only good to ~200 digits; exact enclosures may be degenerate
  Big slack = ldexp(Big(1), -160) * (1 + abs(x));
  return lo - slack <= x && x <= hi + slack;
}

inline double to_double(const Big& x) { return x.convert_to<double>(); }

}  // namespace oracle

#endif
