#include "cstar/function.hpp"

#include <cstdlib>
#include <queue>

namespace cstar {

HalfPowerMatrixFunction HalfPowerMatrixFunction::constant(const RationalMatrix& c) { return monomial(0, 0, c); }

HalfPowerMatrixFunction HalfPowerMatrixFunction::monomial(unsigned r, unsigned s, const RationalMatrix& c) {
  HalfPowerMatrixFunction f(c.dim());
  f.add_term(r, s, c);
  return f;
}

void HalfPowerMatrixFunction::add_term(unsigned r, unsigned s, const RationalMatrix& c) {
  if (c.dim() != n_) throw precondition_error("half-power function: dimension mismatch");
  if (s >= 2) {
    // (1-t)^{s/2} = (1-t)^{s%2/2} sum_i binom(s/2, i) (-t)^i keeps the form canonical
    Integer binom = 1;
    const unsigned half = s / 2;
    for (unsigned i = 0; i <= half; ++i) {
      add_term(r + 2 * i, s % 2, GaussianRational(Rational(i % 2 ? -binom : binom)) * c);
      binom = binom * (half - i) / (i + 1);
    }
    return;
  }
  auto it = terms_.find({r, s});
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(Exponents{r, s}, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

HalfPowerMatrixFunction HalfPowerMatrixFunction::adjoint() const {
  HalfPowerMatrixFunction f(n_);
  for (const auto& [e, c] : terms_) f.terms_.emplace(e, c.adjoint());
  return f;
}

HalfPowerMatrixFunction& HalfPowerMatrixFunction::operator+=(const HalfPowerMatrixFunction& o) {
  if (o.n_ != n_) throw precondition_error("half-power function: dimension mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, c);
  return *this;
}

HalfPowerMatrixFunction& HalfPowerMatrixFunction::operator-=(const HalfPowerMatrixFunction& o) {
  if (o.n_ != n_) throw precondition_error("half-power function: dimension mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, -c);
  return *this;
}

Rational HalfPowerMatrixFunction::holder_constant() const {
  // |x^r - y^r| <= r |x - y| on [0, 1] and sqrt is 1/2-Hoelder with constant 1
  Rational l = 0;
  for (const auto& [e, c] : terms_) {
    Rational nb = std::max(c.norm1_upper(), c.norm_inf_upper());
    l += Rational(static_cast<long>(e.first + e.second)) * nb;
  }
  return l;
}

HalfPowerMatrixFunction operator+(HalfPowerMatrixFunction a, const HalfPowerMatrixFunction& b) { return a += b; }
HalfPowerMatrixFunction operator-(HalfPowerMatrixFunction a, const HalfPowerMatrixFunction& b) { return a -= b; }

HalfPowerMatrixFunction operator*(const HalfPowerMatrixFunction& a, const HalfPowerMatrixFunction& b) {
  if (a.dim() != b.dim()) throw precondition_error("half-power function: dimension mismatch");
  HalfPowerMatrixFunction f(a.dim());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) f.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
  return f;
}

HalfPowerMatrixFunction operator*(const GaussianRational& c, const HalfPowerMatrixFunction& a) {
  HalfPowerMatrixFunction f(a.dim());
  for (const auto& [e, m] : a.terms()) f.add_term(e.first, e.second, c * m);
  return f;
}

HalfPowerMatrixFunction kron(const HalfPowerMatrixFunction& f, const RationalMatrix& b) {
  HalfPowerMatrixFunction g(f.dim() * b.dim());
  for (const auto& [e, c] : f.terms()) g.add_term(e.first, e.second, kron(c, b));
  return g;
}

HalfPowerMatrixFunction kron(const RationalMatrix& a, const HalfPowerMatrixFunction& f) {
  HalfPowerMatrixFunction g(a.dim() * f.dim());
  for (const auto& [e, c] : f.terms()) g.add_term(e.first, e.second, kron(a, c));
  return g;
}

namespace {

DyadicInterval ipow(const DyadicInterval& x, unsigned e) {
  DyadicInterval r(1);
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

IntervalMatrix eval_scalars(const HalfPowerMatrixFunction& f, const DyadicInterval& sq_t, const DyadicInterval& sq_u) {
  IntervalMatrix r(f.dim());
  for (const auto& [e, c] : f.terms()) {
    DyadicInterval w = ipow(sq_t, e.first) * ipow(sq_u, e.second);
    r += ComplexInterval(w) * IntervalMatrix(c);
  }
  return r;
}

DyadicInterval clip01(const DyadicInterval& t) {
  Dyadic lo = max(t.lo(), Dyadic(0)), hi = min(t.hi(), Dyadic(1));
  return DyadicInterval(lo, hi);
}

}  // namespace

IntervalMatrix hp_eval(const HalfPowerMatrixFunction& f, const Rational& t, long k) {
  if (t < 0 || t > 1) throw precondition_error("hp_eval: t outside [0, 1]");
  long bits = 0;
  for (const auto& [e, c] : f.terms()) bits = std::max<long>(bits, e.first + e.second);
  precision_scope ps(std::max<long>(working_precision(), k + 64 + 4 * bits));
  DyadicInterval ti = DyadicInterval::from_rational(t), ui = DyadicInterval::from_rational(Rational(1) - t);
  return eval_scalars(f, sqrt(ti), sqrt(ui));
}

IntervalMatrix hp_eval_box(const HalfPowerMatrixFunction& f, const DyadicInterval& t) {
  DyadicInterval tc = clip01(t);
  DyadicInterval u = clip01(DyadicInterval(1) - tc);
  return eval_scalars(f, sqrt(tc), sqrt(u));
}

RationalMatrix hp_endpoint(const HalfPowerMatrixFunction& f, int endpoint) {
  RationalMatrix r(f.dim());
  for (const auto& [e, c] : f.terms()) {
    unsigned vanishing = endpoint == 0 ? e.first : e.second;
    if (vanishing == 0) r += c;
  }
  return r;
}

CertifiedFunction certified(const HalfPowerMatrixFunction& f) {
  CertifiedFunction c;
  c.n = f.dim();
  c.eval = [f](const DyadicInterval& t, long k) {
    precision_scope ps(std::max<long>(working_precision(), k + 64));
    return hp_eval_box(f, t);
  };
  c.modulus = Dyadic::round(f.holder_constant(), MPFR_RNDU, 64);
  c.lipschitz = false;
  return c;
}

DyadicInterval apply_reparam(const DyadicInterval& t, Reparam xi) {
  switch (xi) {
    case Reparam::lower_half:
      return mul_2exp(t, -1);
    case Reparam::midpoint:
      return DyadicInterval(Dyadic::pow2(-1));
    case Reparam::upper_half:
      return mul_2exp(t + DyadicInterval(1), -1);
  }
  return t;
}

CertifiedFunction compose_reparam(const CertifiedFunction& f, Reparam xi) {
  CertifiedFunction g;
  g.n = f.n;
  g.lipschitz = f.lipschitz;
  auto inner = f.eval;
  g.eval = [inner, xi](const DyadicInterval& t, long k) { return inner(apply_reparam(t, xi), k); };
  if (xi == Reparam::midpoint) {
    g.modulus = Dyadic(0);
  } else if (f.lipschitz) {
    g.modulus = exact_mul_2exp(f.modulus, -1);
  } else {
    // L 2^{-1/2}, rounded up
    precision_scope ps(64);
    g.modulus = div(f.modulus, sqrt(Dyadic(2), MPFR_RNDD), MPFR_RNDU);
  }
  return g;
}

long box_budget_from_env(long fallback) {
  if (const char* s = std::getenv("CSTAR_BUDGET_BOXES")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && v > 0) return v;
  }
  return fallback;
}

namespace {

struct Box {
  Dyadic a, b, upper;
};

struct BoxOrder {
  // max-heap on the upper bound; ties broken by position for determinism
  bool operator()(const Box& x, const Box& y) const {
    if (x.upper != y.upper) return x.upper < y.upper;
    return y.a < x.a;
  }
};

}  // namespace

DyadicInterval sup_norm(const CertifiedFunction& f, long k, SupNormOptions opt) {
  long budget = opt.budget > 0 ? opt.budget : box_budget_from_env();
  long kk = k + 3;
  precision_scope ps(std::max<long>(working_precision(), k + 64));
  Dyadic eps = Dyadic::pow2(-k);

  auto upper_of = [&](const Dyadic& a, const Dyadic& b) { return matrix_norm(f.eval(DyadicInterval(a, b), kk), kk).hi(); };
  auto lower_at = [&](const Dyadic& t) { return matrix_norm(f.eval(DyadicInterval(t), kk), kk).lo(); };

  Dyadic lower = max(lower_at(Dyadic(0)), lower_at(Dyadic(1)));
  lower = max(lower, lower_at(Dyadic::pow2(-1)));
  std::priority_queue<Box, std::vector<Box>, BoxOrder> heap;
  heap.push({Dyadic(0), Dyadic(1), upper_of(Dyadic(0), Dyadic(1))});
  long boxes = 1;
  while (true) {
    const Box top = heap.top();
    Dyadic gap = sub(top.upper, lower, MPFR_RNDU);
    if (gap <= eps) return DyadicInterval(lower, max(top.upper, lower));
    if (boxes >= budget)
      throw infeasible_error("sup_norm: box budget " + std::to_string(budget) + " exhausted at gap " +
                             std::to_string(gap.to_double()));
    heap.pop();
    Dyadic m = exact_mul_2exp(exact_add(top.a, top.b), -1);
    lower = max(lower, lower_at(m));
    for (int side = 0; side < 2; ++side) {
      Dyadic a = side == 0 ? top.a : m, b = side == 0 ? m : top.b;
      Dyadic u = upper_of(a, b);
      ++boxes;
      if (u > lower) heap.push({a, b, u});
    }
    if (heap.empty()) return DyadicInterval(lower, lower);
  }
}

DyadicInterval sup_norm(const HalfPowerMatrixFunction& f, long k, SupNormOptions opt) {
  return sup_norm(certified(f), k, opt);
}

Dyadic boundary_distance(const HalfPowerMatrixFunction& f, int endpoint, std::size_t p, std::size_t q, long k) {
  if (f.dim() != p * q) throw precondition_error("boundary_distance: dimension is not p*q");
  if (endpoint != 0 && endpoint != 1) throw precondition_error("boundary_distance: endpoint must be 0 or 1");
  return distance_to_factor(hp_endpoint(f, endpoint), p, q, endpoint == 0 ? 1 : 2, k).hi();
}

Dyadic boundary_distance(const CertifiedFunction& f, int endpoint, std::size_t p, std::size_t q, long k) {
  if (f.n != p * q) throw precondition_error("boundary_distance: dimension is not p*q");
  if (endpoint != 0 && endpoint != 1) throw precondition_error("boundary_distance: endpoint must be 0 or 1");
  IntervalMatrix b = f.eval(DyadicInterval(Dyadic(endpoint)), k + 8);
  return distance_to_factor(b, p, q, endpoint == 0 ? 1 : 2, k).hi();
}

}  // namespace cstar
