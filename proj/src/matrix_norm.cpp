#include "cstar/errors.hpp"
#include "cstar/matrix_ops.hpp"

#include <Eigen/Dense>

#include <algorithm>

namespace cstar {

namespace {

Eigen::MatrixXcd midpoint_double(const IntervalMatrix& m) {
  std::size_t n = m.dim();
  Eigen::MatrixXcd d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d(i, j) = {m(i, j).re.mid().to_double(), m(i, j).im.mid().to_double()};
  return d;
}

// Lower triangle (and diagonal) of M^* M.
IntervalMatrix gram_lower(const IntervalMatrix& m) {
  std::size_t n = m.dim();
  IntervalMatrix g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      ComplexInterval s;
      for (std::size_t l = 0; l < n; ++l) s += mul_conj(m(l, j), m(l, i));
      g(i, j) = s;
    }
  return g;
}

using Vec = std::vector<ComplexInterval>;

Vec mat_vec(const IntervalMatrix& m, const Vec& x) {
  std::size_t n = m.dim();
  Vec y(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) y[i] += m(i, j) * x[j];
  return y;
}

DyadicInterval norm_sq(const Vec& x) {
  DyadicInterval s(0);
  for (const auto& z : x) s += z.norm_sq();
  return s;
}

// lower bound of ||M x|| / ||x|| over all members of M
Dyadic rayleigh_lower(const IntervalMatrix& m, const Vec& x) {
  DyadicInterval nx = norm_sq(x);
  if (!nx.positive()) return Dyadic(0);
  DyadicInterval ny = norm_sq(mat_vec(m, x));
  DyadicInterval q = DyadicInterval(ny.lo()) / DyadicInterval(nx.hi());
  return sqrt(q).lo();
}

Vec point_vector(const Eigen::VectorXcd& v) {
  Vec x(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    x[i] = ComplexInterval(DyadicInterval::from_double(v(i).real()), DyadicInterval::from_double(v(i).imag()));
  return x;
}

Vec midpoints(const Vec& x) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    r[i] = ComplexInterval(DyadicInterval(x[i].re.mid()), DyadicInterval(x[i].im.mid()));
  return r;
}

// x <- M^* M x, renormalized so that its largest component is about 1
Vec power_step(const IntervalMatrix& m, const Vec& x) {
  Vec y = midpoints(mat_vec(m, x));
  Vec z = midpoints(mat_vec(m.adjoint(), y));
  Dyadic scale(0);
  for (const auto& c : z) scale = max(scale, c.abs_upper());
  if (scale.is_zero()) return x;
  DyadicInterval s(scale);
  for (auto& c : z) c = midpoints({c / s})[0];
  return z;
}

bool pd_shift(const IntervalMatrix& g_lower, const Dyadic& s) {
  std::size_t n = g_lower.dim();
  IntervalMatrix a(n);
  DyadicInterval s2 = sqr(DyadicInterval(s));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) a(i, j) = i == j ? ComplexInterval(s2 - g_lower(i, i).re) : -g_lower(i, j);
  return certify_positive_definite(a);
}

}  // namespace

bool certify_positive_definite(const IntervalMatrix& a) {
  std::size_t n = a.dim();
  std::vector<DyadicInterval> d(n);
  IntervalMatrix l(n);
  for (std::size_t j = 0; j < n; ++j) {
    DyadicInterval dj = a(j, j).re;
    for (std::size_t k = 0; k < j; ++k) dj -= l(j, k).norm_sq() * d[k];
    if (!dj.positive()) return false;
    d[j] = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      ComplexInterval s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= d[k] * mul_conj(l(i, k), l(j, k));
      l(i, j) = s / dj;
    }
  }
  return true;
}

DyadicInterval matrix_norm(const RationalMatrix& m, long k) {
  precision_scope ps(std::max<long>(working_precision(), k + 96));
  return matrix_norm(IntervalMatrix(m), k);
}

namespace {

DyadicInterval point_norm(const IntervalMatrix& m, long k) {
  std::size_t n = m.dim();
  if (n == 0) return DyadicInterval(0);
  precision_scope ps(std::max<long>(working_precision(), k + 64 + 2 * static_cast<long>(n)));
  Dyadic eps = Dyadic::pow2(-k);
  Dyadic cheap = m.norm_upper_cheap();
  if (cheap <= eps) return DyadicInterval(Dyadic(0), cheap);

  Eigen::MatrixXcd md = midpoint_double(m);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(md, Eigen::ComputeFullV);
  Eigen::VectorXcd v = svd.matrixV().col(0);
  if (!(svd.singularValues()(0) > 0)) v = Eigen::VectorXcd::Unit(n, 0);
  Vec x = point_vector(v);
  Dyadic lower = rayleigh_lower(m, x);

  IntervalMatrix g = gram_lower(m);
  Dyadic half = Dyadic::pow2(-(k + 1));
  for (int attempt = 0; attempt < 4; ++attempt) {
    Dyadic up = add(lower, half, MPFR_RNDU);
    if (up < cheap && pd_shift(g, up)) return DyadicInterval(lower, up);
    for (int it = 0; it < 4; ++it) x = power_step(m, x);
    lower = max(lower, rayleigh_lower(m, x));
  }
  // certified bisection between the Rayleigh lower bound and the cheap bound
  Dyadic lo = lower, hi = cheap;
  for (int it = 0; it < 400 && sub(hi, lower, MPFR_RNDU) > eps; ++it) {
    Dyadic mid = add(lo, hi, MPFR_RNDU);
    mpfr_div_2ui(mid.raw(), mid.raw(), 1, MPFR_RNDU);
    if (mid >= hi) break;
    if (pd_shift(g, mid))
      hi = mid;
    else
      lo = mid;
  }
  return DyadicInterval(lower, hi);
}

}  // namespace

// ||X|| lies within ||mid|| +- ||X - mid|| and ||X - mid|| <= ||radii||_F
DyadicInterval matrix_norm(const IntervalMatrix& m, long k) {
  if (m.max_entry_width().is_zero()) return point_norm(m, k);
  Dyadic r = m.radius_frobenius();
  DyadicInterval c = point_norm(m.mid(), k);
  Dyadic lo = sub(c.lo(), r, MPFR_RNDD);
  if (lo.sign() < 0) lo = Dyadic(0);
  return DyadicInterval(lo, add(c.hi(), r, MPFR_RNDU));
}

}  // namespace cstar
