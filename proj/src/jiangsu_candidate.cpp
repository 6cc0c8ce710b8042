#include "jiangsu_internal.hpp"

#include <cmath>

namespace cstar {

namespace {

constexpr double kUnit = 0x1p-53;

// sum_{m > D} pi^m / m!  (|tau| <= 1/2 and ||W_m|| <= (2 pi)^m / m!)
Dyadic taylor_tail(long D) {
  precision_scope ps(64);
  DyadicInterval pi = DyadicInterval::pi();
  DyadicInterval term(1);
  for (long m = 1; m <= D + 1; ++m) term = term * pi / DyadicInterval(m);
  DyadicInterval ratio = pi / DyadicInterval(D + 2);
  return (term / (DyadicInterval(1) - ratio)).hi();
}

Dyadic sqrt_up(const Integer& sum_sq, long scale_bits) {
  precision_scope ps(64);
  Dyadic s = Dyadic::round(Rational(sum_sq), MPFR_RNDU, 64);
  return mul(sqrt(s, MPFR_RNDU), Dyadic::pow2(-scale_bits), MPFR_RNDU);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw certification_error("candidate: fixed-point overflow");
  return r;
}

std::int64_t checked_shift(std::int64_t a, long s) {
  if (s == 0) return a;
  if (a > (INT64_MAX >> s) || a < (INT64_MIN >> s)) throw certification_error("candidate: fixed-point overflow");
  return a * (std::int64_t(1) << s);
}

struct Analysis {
  Dyadic coeff_error{0};  // sum_m 2^-m ||W_m - W^_m||
  std::vector<std::int64_t> s0_re, s0_im, s1_re, s1_im;  // scaled endpoint sums
};

// Runs the Taylor recursion (m + 1) W_{m+1} = i (W_m h_v - h_u W_m) from
// W_0 = w(1/2) in ball arithmetic and compares each W_m with the fixed-point
// coefficient, which is produced (fill = true) or read from c.
Analysis analyze(const JiangSuMap& J, JiangSuCandidate& c, bool fill) {
  const long D = c.degree, F = c.frac_bits;
  const std::size_t n = J.dim(), nn = n * n;
  auto hu = circulant_balls(J.u_cycles(), [](std::size_t L) { return cycle_log_coefficients(L); });
  auto hv = circulant_balls(J.v_cycles(), [](std::size_t L) { return cycle_log_coefficients(L); });
  Analysis an;
  an.s0_re.assign(nn, 0);
  an.s0_im.assign(nn, 0);
  an.s1_re.assign(nn, 0);
  an.s1_im.assign(nn, 0);
  if (fill) {
    c.coeff_re.assign(D + 1, {});
    c.coeff_im.assign(D + 1, {});
  } else if (c.coeff_re.size() != std::size_t(D + 1) || c.coeff_im.size() != std::size_t(D + 1)) {
    throw certification_error("candidate: coefficient count does not match its degree");
  }
  BallMatrix W = path_dense(J, Rational(1, 2));
  const double scale = std::ldexp(1.0, F);
  for (long m = 0; m <= D; ++m) {
    if (m > 0) {
      BallMatrix S = ball_sub(circulant_right(J.v_cycles(), hv, W), circulant_left(J.u_cycles(), hu, W));
      W = ball_div(ball_scale({0.0, 1.0}, S), double(m));
    }
    auto& re = c.coeff_re[m];
    auto& im = c.coeff_im[m];
    if (fill) {
      re.resize(nn);
      im.resize(nn);
    } else if (re.size() != nn || im.size() != nn) {
      throw certification_error("candidate: coefficient size mismatch");
    }
    double sum_sq = 0;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        std::size_t idx = x * n + y;
        std::complex<double> z = W.mid(x, y);
        if (fill) {
          re[idx] = std::llround(z.real() * scale);
          im[idx] = std::llround(z.imag() * scale);
        }
        // N / 2^F is exact in double (|N| < 2^53)
        std::complex<double> q(double(re[idx]) / scale, double(im[idx]) / scale);
        double e = std::abs(z - q) * (1 + 8 * kUnit) + W.rad(x, y);
        sum_sq += e * e;
        std::int64_t w0 = ((m % 2) ? -1 : 1), sh = D - m;
        an.s0_re[idx] = checked_add(an.s0_re[idx], w0 * checked_shift(re[idx], sh));
        an.s0_im[idx] = checked_add(an.s0_im[idx], w0 * checked_shift(im[idx], sh));
        an.s1_re[idx] = checked_add(an.s1_re[idx], checked_shift(re[idx], sh));
        an.s1_im[idx] = checked_add(an.s1_im[idx], checked_shift(im[idx], sh));
      }
    double frob = round_up(std::sqrt(round_up(sum_sq * (1 + double(nn + 4) * 2 * kUnit))));
    precision_scope ps(64);
    an.coeff_error = add(an.coeff_error, mul(Dyadic::from_double(frob), Dyadic::pow2(-m), MPFR_RNDU), MPFR_RNDU);
  }
  return an;
}

std::uint64_t fnv(std::uint64_t h, std::int64_t v) {
  for (int b = 0; b < 8; ++b) {
    h ^= (static_cast<std::uint64_t>(v) >> (8 * b)) & 0xff;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t fingerprint(const JiangSuCandidate& c) {
  std::uint64_t h = 1469598103934665603ull;
  h = fnv(h, c.degree);
  h = fnv(h, c.frac_bits);
  for (std::size_t m = 0; m < c.coeff_re.size(); ++m)
    for (std::size_t i = 0; i < c.coeff_re[m].size(); ++i) h = fnv(fnv(h, c.coeff_re[m][i]), c.coeff_im[m][i]);
  for (const auto* v : {&c.c0_re, &c.c0_im, &c.c1_re, &c.c1_im})
    for (auto x : *v) h = fnv(h, x);
  return h;
}

// c_e = target * 2^{F + D} - S_e with target the permutation matrix
void endpoint_correction(const PermutationUnitary& w, long bits, const std::vector<std::int64_t>& s_re,
                         const std::vector<std::int64_t>& s_im, std::vector<std::int64_t>& c_re,
                         std::vector<std::int64_t>& c_im) {
  const std::size_t n = w.dim();
  c_re.resize(n * n);
  c_im.resize(n * n);
  const std::int64_t one = std::int64_t(1) << bits;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t idx = x * n + y;
      std::int64_t target = w.sigma[x] == y ? one : 0;
      c_re[idx] = checked_add(target, -s_re[idx]);
      c_im[idx] = -s_im[idx];
    }
}

// W^(0) + c0 / 2^bits == u exactly (and likewise at 1)
bool endpoint_exact(const PermutationUnitary& w, long bits, const std::vector<std::int64_t>& s_re,
                    const std::vector<std::int64_t>& s_im, const std::vector<std::int64_t>& c_re,
                    const std::vector<std::int64_t>& c_im) {
  const std::size_t n = w.dim();
  if (c_re.size() != n * n || c_im.size() != n * n) return false;
  const std::int64_t one = std::int64_t(1) << bits;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t idx = x * n + y;
      std::int64_t target = w.sigma[x] == y ? one : 0;
      if (checked_add(s_re[idx], c_re[idx]) != target || checked_add(s_im[idx], c_im[idx]) != 0) return false;
    }
  return true;
}

Integer sum_squares(const std::vector<std::int64_t>& re, const std::vector<std::int64_t>& im) {
  Integer s = 0, t;
  for (std::size_t i = 0; i < re.size(); ++i) {
    if (re[i]) {
      t = static_cast<long>(re[i]);
      s += t * t;
    }
    if (im[i]) {
      t = static_cast<long>(im[i]);
      s += t * t;
    }
  }
  return s;
}

Dyadic path_error(const JiangSuCandidate& c, const Analysis& an) {
  const long bits = c.frac_bits + c.degree;
  Dyadic corr = max(sqrt_up(sum_squares(c.c0_re, c.c0_im), bits), sqrt_up(sum_squares(c.c1_re, c.c1_im), bits));
  precision_scope ps(64);
  return add(add(taylor_tail(c.degree), an.coeff_error, MPFR_RNDU), corr, MPFR_RNDU);
}

Dyadic distance_bound(const Dyadic& delta_norm, const Dyadic& e) {
  precision_scope ps(64);
  // ||w* D w - W* D W|| <= ||D|| e (||w|| + ||W||) <= ||D|| e (2 + e)
  return mul(delta_norm, mul(e, add(Dyadic(2), e, MPFR_RNDU), MPFR_RNDU), MPFR_RNDU);
}

}  // namespace

JiangSuCandidate jiangsu_candidate(const StarPoly& a, long k) {
  auto J = jiangsu_map(0);
  HalfPowerMatrixFunction f = J->realize(a);
  polynomial_coefficients(f);  // Delta must be a polynomial
  JiangSuCandidate c;
  c.a = a;
  c.delta_norm = cstar::sup_norm(f, 8).hi();
  // e (2 + e) ||Delta|| < 2^-k needs e below about 2^-(k+1) / ||Delta||
  precision_scope ps(64);
  Dyadic nd = max(c.delta_norm, Dyadic(1));
  Dyadic target = div(Dyadic::pow2(-(k + 3)), nd, MPFR_RNDD);
  c.degree = 4;
  while (taylor_tail(c.degree) > target) {
    if (++c.degree > 40) throw infeasible_error("jiangsu candidate: precision beyond the path expansion");
  }
  c.frac_bits = std::min<long>(std::max<long>(40, k + 20), 60 - c.degree);
  if (c.frac_bits < k + 8) throw infeasible_error("jiangsu candidate: precision beyond double-ball evaluation");
  Analysis an = analyze(*J, c, true);
  const long bits = c.frac_bits + c.degree;
  endpoint_correction(J->u(), bits, an.s0_re, an.s0_im, c.c0_re, c.c0_im);
  endpoint_correction(J->v(), bits, an.s1_re, an.s1_im, c.c1_re, c.c1_im);
  c.path_error = path_error(c, an);
  c.fingerprint = fingerprint(c);
  return c;
}

JiangSuVerifyResult jiangsu_verify_candidate(const JiangSuCandidate& cand, long k) {
  auto J = jiangsu_map(0);
  HalfPowerMatrixFunction f = J->realize(cand.a);
  polynomial_coefficients(f);
  if (cand.degree < 1 || cand.frac_bits < 1 || cand.frac_bits + cand.degree > 62)
    throw certification_error("candidate: invalid fixed-point format");
  JiangSuCandidate c = cand;
  Analysis an = analyze(*J, c, false);
  const long bits = c.frac_bits + c.degree;
  // endpoint values u* Delta(0) u and v* Delta(1) v lie in the boundary
  // subalgebras (exact permutation relabeling, checked by build_u/build_v)
  if (!endpoint_exact(J->u(), bits, an.s0_re, an.s0_im, c.c0_re, c.c0_im) ||
      !endpoint_exact(J->v(), bits, an.s1_re, an.s1_im, c.c1_re, c.c1_im))
    throw certification_error("candidate: endpoint values are not the permutation unitaries");
  Dyadic dn = cstar::sup_norm(f, 8).hi();
  Dyadic e = path_error(c, an);
  Dyadic bound = distance_bound(dn, e);
  JiangSuVerifyResult r;
  r.distance = DyadicInterval(Dyadic(0), bound);
  r.degree = c.degree;
  r.fingerprint = fingerprint(c);
  if (!(bound < Dyadic::pow2(-k)))
    throw certification_error("candidate distance bound " + bound.str() + " is not below 2^-" + std::to_string(k));
  return r;
}

}  // namespace cstar
