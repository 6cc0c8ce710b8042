#include "cstar/dyadic.hpp"

#include "cstar/errors.hpp"

#include <algorithm>

namespace cstar {

namespace {
thread_local long g_precision = 128;
constexpr long kIntPrec = 64;
}  // namespace

long working_precision() { return g_precision; }

void set_working_precision(long bits) {
  if (bits < 16) bits = 16;
  g_precision = bits;
}

precision_scope::precision_scope(long bits) : saved_(g_precision) { set_working_precision(bits); }
precision_scope::~precision_scope() { g_precision = saved_; }

// ---- Dyadic

void Dyadic::init_prec(long prec) { mpfr_init2(v_, static_cast<mpfr_prec_t>(std::max<long>(prec, 2))); }

Dyadic::Dyadic() {
  init_prec(2);
  mpfr_set_zero(v_, 1);
}

Dyadic::Dyadic(long v) {
  init_prec(kIntPrec);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

Dyadic::Dyadic(const Integer& mantissa, long exponent) {
  long bits = static_cast<long>(mpz_sizeinbase(mantissa.get_mpz_t(), 2));
  init_prec(bits);
  mpfr_set_z_2exp(v_, mantissa.get_mpz_t(), exponent, MPFR_RNDN);
}

Dyadic::Dyadic(const Dyadic& o) {
  init_prec(mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Dyadic::Dyadic(Dyadic&& o) noexcept {
  init_prec(2);
  mpfr_swap(v_, o.v_);
}

Dyadic& Dyadic::operator=(const Dyadic& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Dyadic& Dyadic::operator=(Dyadic&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Dyadic::~Dyadic() { mpfr_clear(v_); }

Dyadic Dyadic::from_double(double x) {
  Dyadic d;
  mpfr_set_prec(d.v_, 53);
  mpfr_set_d(d.v_, x, MPFR_RNDN);
  return d;
}

Dyadic Dyadic::round(const Rational& q, mpfr_rnd_t rnd, long prec) {
  Dyadic d;
  mpfr_set_prec(d.v_, static_cast<mpfr_prec_t>(std::max<long>(prec, 2)));
  mpfr_set_q(d.v_, q.get_mpq_t(), rnd);
  return d;
}

Dyadic Dyadic::pow2(long e) {
  Dyadic d;
  mpfr_set_ui_2exp(d.v_, 1, e, MPFR_RNDN);
  return d;
}

void Dyadic::decompose(Integer& mantissa, long& exponent) const {
  if (mpfr_zero_p(v_)) {
    mantissa = 0;
    exponent = 0;
    return;
  }
  mpfr_exp_t e = mpfr_get_z_2exp(mantissa.get_mpz_t(), v_);
  mp_bitcnt_t tz = mpz_scan1(mantissa.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(mantissa.get_mpz_t(), mantissa.get_mpz_t(), tz);
  exponent = static_cast<long>(e) + static_cast<long>(tz);
}

Rational Dyadic::to_rational() const {
  Integer m;
  long e;
  decompose(m, e);
  Rational q(m);
  return q * cstar::pow2(e);
}

double Dyadic::to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(v_, rnd); }

std::string Dyadic::str() const { return to_string(to_rational()); }

long Dyadic::ceil_log2_abs() const {
  if (is_zero()) throw precondition_error("log of zero");
  long e = static_cast<long>(mpfr_get_exp(v_));  // 2^(e-1) <= |x| < 2^e
  Dyadic p = pow2(e - 1);
  return mpfr_cmpabs(v_, p.v_) == 0 ? e - 1 : e;
}

// ---- exact operations

static long low_bit(mpfr_srcptr x) {
  return static_cast<long>(mpfr_get_exp(x)) - static_cast<long>(mpfr_get_prec(x));
}

Dyadic exact_add(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  long hi = std::max<long>(mpfr_get_exp(a.raw()), mpfr_get_exp(b.raw())) + 1;
  long lo = std::min(low_bit(a.raw()), low_bit(b.raw()));
  Dyadic r;
  mpfr_set_prec(r.raw(), static_cast<mpfr_prec_t>(std::max<long>(hi - lo, 2)));
  mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Dyadic exact_neg(const Dyadic& a) {
  Dyadic r(a);
  mpfr_neg(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

Dyadic exact_sub(const Dyadic& a, const Dyadic& b) { return exact_add(a, exact_neg(b)); }

Dyadic exact_mul(const Dyadic& a, const Dyadic& b) {
  Dyadic r;
  mpfr_set_prec(r.raw(), mpfr_get_prec(a.raw()) + mpfr_get_prec(b.raw()));
  mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Dyadic exact_mul_2exp(const Dyadic& a, long e) {
  Dyadic r(a);
  mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
  return r;
}

// ---- rounded operations

static Dyadic fresh() {
  Dyadic r;
  mpfr_set_prec(r.raw(), static_cast<mpfr_prec_t>(working_precision()));
  return r;
}

Dyadic add(const Dyadic& a, const Dyadic& b, mpfr_rnd_t rnd) {
  Dyadic r = fresh();
  mpfr_add(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

Dyadic sub(const Dyadic& a, const Dyadic& b, mpfr_rnd_t rnd) {
  Dyadic r = fresh();
  mpfr_sub(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

Dyadic mul(const Dyadic& a, const Dyadic& b, mpfr_rnd_t rnd) {
  Dyadic r = fresh();
  mpfr_mul(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

Dyadic div(const Dyadic& a, const Dyadic& b, mpfr_rnd_t rnd) {
  if (b.is_zero()) throw precondition_error("dyadic division by zero");
  Dyadic r = fresh();
  mpfr_div(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}

Dyadic sqrt(const Dyadic& a, mpfr_rnd_t rnd) {
  if (a.sign() < 0) throw precondition_error("sqrt of negative dyadic");
  Dyadic r = fresh();
  mpfr_sqrt(r.raw(), a.raw(), rnd);
  return r;
}

Dyadic min(const Dyadic& a, const Dyadic& b) { return a <= b ? a : b; }
Dyadic max(const Dyadic& a, const Dyadic& b) { return a >= b ? a : b; }
Dyadic abs(const Dyadic& a) { return a.sign() < 0 ? exact_neg(a) : a; }

// ---- DyadicInterval

DyadicInterval::DyadicInterval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw precondition_error("interval with lo > hi");
}

DyadicInterval DyadicInterval::from_rational(const Rational& q) {
  Dyadic lo = Dyadic::round(q, MPFR_RNDD);
  if (lo.cmp(q) == 0) return DyadicInterval(lo);
  return DyadicInterval(lo, Dyadic::round(q, MPFR_RNDU));
}

DyadicInterval DyadicInterval::pi() {
  Dyadic lo = fresh(), hi = fresh();
  mpfr_const_pi(lo.raw(), MPFR_RNDD);
  mpfr_const_pi(hi.raw(), MPFR_RNDU);
  return DyadicInterval(lo, hi);
}

DyadicInterval DyadicInterval::hull(const DyadicInterval& a, const DyadicInterval& b) {
  return DyadicInterval(min(a.lo_, b.lo_), max(a.hi_, b.hi_));
}

Dyadic DyadicInterval::width() const { return sub(hi_, lo_, MPFR_RNDU); }

Dyadic DyadicInterval::mid() const {
  if (is_point()) return lo_;
  Dyadic m = add(lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.raw(), m.raw(), 1, MPFR_RNDN);
  if (m < lo_) return lo_;
  if (m > hi_) return hi_;
  return m;
}

Dyadic DyadicInterval::rad() const {
  if (is_point()) return Dyadic(0);
  Dyadic m = mid();
  return max(sub(hi_, m, MPFR_RNDU), sub(m, lo_, MPFR_RNDU));
}

Dyadic DyadicInterval::mag() const { return max(abs(lo_), abs(hi_)); }

Dyadic DyadicInterval::mig() const {
  if (contains_zero()) return Dyadic(0);
  return min(abs(lo_), abs(hi_));
}

DyadicInterval& DyadicInterval::operator+=(const DyadicInterval& o) {
  *this = *this + o;
  return *this;
}
DyadicInterval& DyadicInterval::operator-=(const DyadicInterval& o) {
  *this = *this - o;
  return *this;
}
DyadicInterval& DyadicInterval::operator*=(const DyadicInterval& o) {
  *this = *this * o;
  return *this;
}

std::string DyadicInterval::str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

DyadicInterval operator+(const DyadicInterval& a, const DyadicInterval& b) {
  return DyadicInterval(add(a.lo(), b.lo(), MPFR_RNDD), add(a.hi(), b.hi(), MPFR_RNDU));
}

DyadicInterval operator-(const DyadicInterval& a, const DyadicInterval& b) {
  return DyadicInterval(sub(a.lo(), b.hi(), MPFR_RNDD), sub(a.hi(), b.lo(), MPFR_RNDU));
}

DyadicInterval operator-(const DyadicInterval& a) {
  return DyadicInterval(exact_neg(a.hi()), exact_neg(a.lo()));
}

DyadicInterval operator*(const DyadicInterval& a, const DyadicInterval& b) {
  if (a.is_point() && b.is_point())
    return DyadicInterval(mul(a.lo(), b.lo(), MPFR_RNDD), mul(a.lo(), b.lo(), MPFR_RNDU));
  if (a.nonnegative() && b.nonnegative())
    return DyadicInterval(mul(a.lo(), b.lo(), MPFR_RNDD), mul(a.hi(), b.hi(), MPFR_RNDU));
  const Dyadic* xs[2] = {&a.lo(), &a.hi()};
  const Dyadic* ys[2] = {&b.lo(), &b.hi()};
  Dyadic lo, hi;
  bool first = true;
  for (auto* x : xs)
    for (auto* y : ys) {
      Dyadic l = mul(*x, *y, MPFR_RNDD);
      Dyadic h = mul(*x, *y, MPFR_RNDU);
      if (first || l < lo) lo = l;
      if (first || h > hi) hi = h;
      first = false;
    }
  return DyadicInterval(lo, hi);
}

DyadicInterval operator/(const DyadicInterval& a, const DyadicInterval& b) {
  if (b.contains_zero()) throw certification_error("interval division by an interval containing 0");
  const Dyadic* xs[2] = {&a.lo(), &a.hi()};
  const Dyadic* ys[2] = {&b.lo(), &b.hi()};
  Dyadic lo, hi;
  bool first = true;
  for (auto* x : xs)
    for (auto* y : ys) {
      Dyadic l = div(*x, *y, MPFR_RNDD);
      Dyadic h = div(*x, *y, MPFR_RNDU);
      if (first || l < lo) lo = l;
      if (first || h > hi) hi = h;
      first = false;
    }
  return DyadicInterval(lo, hi);
}

DyadicInterval sqr(const DyadicInterval& a) {
  Dyadic m = a.mig(), M = a.mag();
  return DyadicInterval(mul(m, m, MPFR_RNDD), mul(M, M, MPFR_RNDU));
}

DyadicInterval sqrt(const DyadicInterval& a) {
  if (a.hi().sign() < 0) throw certification_error("sqrt of a negative interval");
  Dyadic lo = a.lo().sign() <= 0 ? Dyadic(0) : sqrt(a.lo(), MPFR_RNDD);
  return DyadicInterval(lo, sqrt(a.hi(), MPFR_RNDU));
}

DyadicInterval abs(const DyadicInterval& a) { return DyadicInterval(a.mig(), a.mag()); }

DyadicInterval exp(const DyadicInterval& a) {
  Dyadic lo = fresh(), hi = fresh();
  mpfr_exp(lo.raw(), a.lo().raw(), MPFR_RNDD);
  mpfr_exp(hi.raw(), a.hi().raw(), MPFR_RNDU);
  return DyadicInterval(lo, hi);
}

// Lipschitz-1 enclosure around the midpoint, clipped to [-1, 1]
template <int (*F)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)>
static DyadicInterval trig(const DyadicInterval& a) {
  Dyadic m = a.mid();
  Dyadic r = a.rad();
  Dyadic lo = fresh(), hi = fresh();
  F(lo.raw(), m.raw(), MPFR_RNDD);
  F(hi.raw(), m.raw(), MPFR_RNDU);
  lo = sub(lo, r, MPFR_RNDD);
  hi = add(hi, r, MPFR_RNDU);
  if (lo < Dyadic(-1)) lo = Dyadic(-1);
  if (hi > Dyadic(1)) hi = Dyadic(1);
  return DyadicInterval(lo, hi);
}

DyadicInterval cos(const DyadicInterval& a) { return trig<mpfr_cos>(a); }
DyadicInterval sin(const DyadicInterval& a) { return trig<mpfr_sin>(a); }

DyadicInterval atan(const DyadicInterval& a) {
  Dyadic lo = fresh(), hi = fresh();
  mpfr_atan(lo.raw(), a.lo().raw(), MPFR_RNDD);
  mpfr_atan(hi.raw(), a.hi().raw(), MPFR_RNDU);
  return DyadicInterval(lo, hi);
}

DyadicInterval mul_2exp(const DyadicInterval& a, long e) {
  return DyadicInterval(exact_mul_2exp(a.lo(), e), exact_mul_2exp(a.hi(), e));
}

DyadicInterval max(const DyadicInterval& a, const DyadicInterval& b) {
  return DyadicInterval(max(a.lo(), b.lo()), max(a.hi(), b.hi()));
}

DyadicInterval min(const DyadicInterval& a, const DyadicInterval& b) {
  return DyadicInterval(min(a.lo(), b.lo()), min(a.hi(), b.hi()));
}

DyadicInterval inflate(const DyadicInterval& a, const Dyadic& r) {
  if (r.is_zero()) return a;
  return DyadicInterval(sub(a.lo(), r, MPFR_RNDD), add(a.hi(), r, MPFR_RNDU));
}

}  // namespace cstar
