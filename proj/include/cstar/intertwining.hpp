#ifndef CSTAR_INTERTWINING_HPP
#define CSTAR_INTERTWINING_HPP

#include "cstar/calculus.hpp"
#include "cstar/matrix_ops.hpp"
#include "cstar/uhf.hpp"

#include <chrono>
#include <optional>
#include <sstream>

namespace cstar {

// Stage-n constants of the staged search.
//   eta = 2^-(n+2), eps = 2^-(n+3) / max(1, B),
//   k = n + 3 + ceil log2 max(1, B) + ceil log2 (n + 1)
// with B the largest certified norm bound of the points in play.
struct ScheduleEntry {
  std::size_t n = 0;
  Rational bound;  // B_n
  Rational eps, eta;
  long k = 0;
  // ||Omega* b Omega - V* b V|| <= conj_slack ||b|| when the n-1 earlier
  // unitaries are replaced by their 2^-k truncations: D (2 + D) with
  // D = (1 + 2^-k)^(n-1) - 1
  Rational conj_slack;
};
// Certifies (2 eps + 2^-(k-1)) B + eta <= 2^-n, (2 eps + conj_slack) B + eta <= 2^-n,
// 2 eps B + eta <= 2^-n and eps <= 1/2 in exact arithmetic; certification_error otherwise.
ScheduleEntry make_schedule(std::size_t n, const Rational& bound);

// ||(1 + 2^-p)^m - 1|| style slack: D (2 + D), D = (1 + 2^-p)^m - 1
Rational truncation_slack(long p, std::size_t m);

// Thrown when a stage exhausts its enumeration budget.
class stage_budget_error : public infeasible_error {
 public:
  stage_budget_error(const std::string& what, std::vector<Dyadic> best)
      : infeasible_error(what), best_margins(std::move(best)) {}
  std::vector<Dyadic> best_margins;
};

struct EngineOptions {
  std::uint64_t budget = 0;  // 0: CSTAR_ENUM_BUDGET or 10^6
  bool use_supplier = true;
  long extra_bits = 12;      // norms are certified at 2^-(n + extra_bits)
};

// Backend requirements (see UhfLegBackend and MatrixTensorBackend):
//   APoint, BPoint value types
//   a_point(j), b_point(j)        j-th enumerated rational point, j >= 1
//   index_of(a)                    its position, when it is an enumerated point
//   is_unit(a), phi(a)             phi exact
//   one(), mul, add, sub, adjoint, scale, is_zero (exact)
//   norm(b, k), norm_a(a, k)       certified enclosures
//   supplier(n, commute, absorb)   candidate unitaries
//   pullback(x)                    proposed a with phi(a) near x
//   enumerate_a(code), enumerate_b(code)   decoded rational points (nullopt if not one)
//   code_a(a), code_b(b)
template <class Backend>
class IntertwiningEngine {
 public:
  using APoint = typename Backend::APoint;
  using BPoint = typename Backend::BPoint;

  struct Stage {
    ScheduleEntry schedule;
    BPoint v;  // v~_n
    bool exact_unitary = false;
    Dyadic unitarity;                        // max ||v*v - 1||, ||vv* - 1||
    std::vector<APoint> pullbacks;           // a_{j,n}, j = 1..n
    std::vector<Dyadic> conj_margins;        // ||v* (Omega* b_j Omega) v - phi(a_{j,n})||
    std::vector<Dyadic> pull_margins;        // ||v phi(a_{k,j}) - phi(a_{k,j}) v||, k <= j < n
    std::vector<Dyadic> gen_margins;         // ||v phi(a_j) - phi(a_j) v||
    Rational derived_bound;                  // bound on the stage inequalities for the unitary v_n
    std::string source;                      // "supplier" or "enumeration"
    std::uint64_t steps = 0;
    double wall_time = 0;
    Code v_code;
    std::vector<Code> a_codes;

    std::vector<Dyadic> margins() const {
      std::vector<Dyadic> all = conj_margins;
      all.insert(all.end(), pull_margins.begin(), pull_margins.end());
      all.insert(all.end(), gen_margins.begin(), gen_margins.end());
      return all;
    }
    Dyadic max_margin() const {
      Dyadic m(0);
      for (const auto& x : margins()) m = max(m, x);
      return m;
    }
  };

  struct Approx {
    BPoint point;
    Rational error;  // certified bound on the distance to the exact element
  };

  struct PsiResult {
    BPoint point;
    Code code;
    Rational error;  // ||point - psi(a)|| < error <= 2^-m
    std::size_t stages_used = 0;
    long p = 0;
  };

  struct CauResult {
    std::size_t n = 0;
    Rational bound;  // ||V_n phi(a) V_n* - psi(a)|| < bound < 2^-m
  };

  explicit IntertwiningEngine(Backend backend, EngineOptions opt = {})
      : be_(std::move(backend)), opt_(opt) {
    if (opt_.budget == 0) opt_.budget = enum_budget_from_env();
  }

  const Backend& backend() const { return be_; }
  const std::vector<Stage>& stages() const { return st_; }

  // runs stage n = stages().size() + 1
  const Stage& step();
  void run(std::size_t count) {
    while (st_.size() < count) step();
  }

  // omega_p(v~_i) within error of v_i = omega(v~_i)
  Approx omega(std::size_t i, long p) const;
  // omega_p(v~_1) ... omega_p(v~_n), within error of V_n = v_1 ... v_n
  Approx witness(std::size_t n, long p) const;
  // W_n(a) = V_n phi(a) V_n* through witness(n, p)
  Approx conjugate(std::size_t n, const APoint& a, long p) const;

  // rational point within 2^-m of psi(a) for an enumerated point a
  PsiResult psi_approx(const APoint& a, long m) const;
  // least n with ||V_n phi(a) V_n* - psi(a)|| < 2^-m, certified against the
  // approximant built from all completed stages
  CauResult verify_cau(const APoint& a, long m) const;
  // certified upper bound on ||W_n(a) - W_{n+1}(a)||
  Dyadic cauchy_difference(const APoint& a, std::size_t n, long p) const;

 private:
  struct Context {
    ScheduleEntry sched;
    std::vector<BPoint> conj;     // Omega* b_j Omega
    std::vector<BPoint> pulled;   // phi(a_{k,j}), k <= j < n
    std::vector<BPoint> gens;     // phi(a_j)
  };

  struct Trial {
    std::optional<Stage> stage;
    std::vector<Dyadic> margins;  // for reporting failures
  };

  long norm_bits(std::size_t n) const { return static_cast<long>(n) + opt_.extra_bits; }
  Dyadic upper(const BPoint& x, std::size_t n) const {
    if (be_.is_zero(x)) return Dyadic(0);
    return be_.norm(x, norm_bits(n)).hi();
  }
  Rational bound_a(const APoint& a) const { return Rational(be_.norm_a(a, 20).hi().to_rational()); }
  Rational bound_b(const BPoint& b) const {
    if (be_.is_zero(b)) return Rational(0);
    return Rational(be_.norm(b, 20).hi().to_rational());
  }
  std::size_t require_index(const APoint& a) const;
  Trial try_candidate(const Context& ctx, BPoint v) const;
  // the proposed pullback E(x); ||x - E(x)|| <= 2 d(x, phi(A)) since E is a contractive retraction
  std::optional<APoint> find_pullback(const BPoint& x, const Rational& eta, std::size_t n, Dyadic& margin) const;
  void charge(std::uint64_t& steps, std::size_t n, const std::vector<Dyadic>& best) const;

  Backend be_;
  EngineOptions opt_;
  std::vector<Stage> st_;
};

// ---- backends

// A = M_{2^inf}, B = A (x) A, phi = id (x) 1, points stored as leg points.
// Enumerations: a_j runs through the matrix units of stage 1, then stage 2, ...
// b_{2i-1} = a_i (x) 1, b_{2i} = 1 (x) a_i.
class UhfLegBackend {
 public:
  using APoint = LegPoint;
  using BPoint = LegPoint;

  UhfLegBackend();
  std::string describe() const { return "uhf-legs"; }
  const UhfPresentation& a_presentation() const { return *a_; }
  const UhfTensorPresentation& b_presentation() const { return *b_; }

  APoint a_point(std::size_t j) const;
  BPoint b_point(std::size_t j) const;
  std::optional<std::size_t> index_of(const APoint& a) const;
  bool is_unit(const APoint& a) const;
  BPoint phi(const APoint& a) const { return a; }
  BPoint one() const { return LegPoint::identity(); }
  BPoint mul(const BPoint& x, const BPoint& y) const { return x * y; }
  BPoint add(const BPoint& x, const BPoint& y) const { return x + y; }
  BPoint sub(const BPoint& x, const BPoint& y) const { return x - y; }
  BPoint adjoint(const BPoint& x) const { return x.adjoint(); }
  BPoint scale(const GaussianRational& c, const BPoint& x) const { return c * x; }
  bool is_zero(const BPoint& x) const { return x.is_zero(); }
  DyadicInterval norm(const BPoint& x, long k) const { return cstar::norm(x, k); }
  DyadicInterval norm_a(const APoint& x, long k) const { return cstar::norm(x, k); }
  // the half flip past every leg touched by the targets
  std::vector<BPoint> supplier(std::size_t n, const std::vector<BPoint>& commute,
                               const std::vector<BPoint>& absorb) const;
  std::optional<APoint> pullback(const BPoint& x) const;
  std::optional<BPoint> enumerate_b(std::uint64_t code) const;
  std::optional<APoint> enumerate_a(std::uint64_t code) const;
  Code code_a(const APoint& a) const { return encode_poly(uhf_point(trim(a))); }
  Code code_b(const BPoint& b) const { return encode_poly(uhf_tensor_point(trim(b))); }

 private:
  std::shared_ptr<UhfPresentation> a_;
  std::shared_ptr<UhfTensorPresentation> b_;
};

// A = M_n, B = M_n (x) M_m, phi = id (x) 1, dense rational matrices.
// The enumerations start with the given prefixes and continue through the
// rational points of matrix:n and tensor(matrix:n,matrix:m) in code order.
class MatrixTensorBackend {
 public:
  using APoint = RationalMatrix;
  using BPoint = RationalMatrix;
  enum class Supplier { identity, none };

  MatrixTensorBackend(std::size_t n, std::size_t m, std::vector<RationalMatrix> a_prefix = {},
                      std::vector<RationalMatrix> b_prefix = {}, Supplier supplier = Supplier::identity);
  std::string describe() const;
  const Presentation& a_presentation() const { return *a_; }
  const Presentation& b_presentation() const { return *b_; }

  APoint a_point(std::size_t j) const;
  BPoint b_point(std::size_t j) const;
  std::optional<std::size_t> index_of(const APoint& a) const;
  bool is_unit(const APoint& a) const { return a.is_identity(); }
  BPoint phi(const APoint& a) const { return kron(a, RationalMatrix::identity(m_)); }
  BPoint one() const { return RationalMatrix::identity(n_ * m_); }
  BPoint mul(const BPoint& x, const BPoint& y) const { return x * y; }
  BPoint add(const BPoint& x, const BPoint& y) const { return x + y; }
  BPoint sub(const BPoint& x, const BPoint& y) const { return x - y; }
  BPoint adjoint(const BPoint& x) const { return x.adjoint(); }
  BPoint scale(const GaussianRational& c, const BPoint& x) const { return c * x; }
  bool is_zero(const BPoint& x) const { return x.is_zero(); }
  DyadicInterval norm(const BPoint& x, long k) const { return matrix_norm(x, k); }
  DyadicInterval norm_a(const APoint& x, long k) const { return matrix_norm(x, k); }
  std::vector<BPoint> supplier(std::size_t n, const std::vector<BPoint>& commute,
                               const std::vector<BPoint>& absorb) const;
  std::optional<APoint> pullback(const BPoint& x) const { return partial_trace_expectation(x, n_, m_, 1); }
  std::optional<BPoint> enumerate_b(std::uint64_t code) const;
  std::optional<APoint> enumerate_a(std::uint64_t code) const;
  Code code_a(const APoint& a) const;
  Code code_b(const BPoint& b) const;

 private:
  std::size_t n_, m_;
  std::shared_ptr<Presentation> a_, b_;
  std::vector<RationalMatrix> a_prefix_, b_prefix_;
  Supplier supplier_;
  // enumerated points past the prefixes, with the next code to decode
  mutable std::vector<RationalMatrix> a_seen_, b_seen_;
  mutable std::uint64_t a_next_ = 1, b_next_ = 1;
};

// ---- engine implementation

template <class Backend>
void IntertwiningEngine<Backend>::charge(std::uint64_t& steps, std::size_t n, const std::vector<Dyadic>& best) const {
  if (++steps > opt_.budget) {
    std::ostringstream os;
    os << "stage " << n << ": enumeration budget of " << opt_.budget << " exhausted; best margins";
    for (const auto& d : best) os << " " << d.str();
    throw stage_budget_error(os.str(), best);
  }
}

template <class Backend>
std::optional<typename Backend::APoint> IntertwiningEngine<Backend>::find_pullback(const BPoint& x,
                                                                                  const Rational& eta,
                                                                                  std::size_t n,
                                                                                  Dyadic& margin) const {
  margin = Dyadic(1);
  auto a = be_.pullback(x);
  if (!a) return std::nullopt;
  margin = upper(be_.sub(x, be_.phi(*a)), n);
  if (Rational(margin.to_rational()) < eta) return a;
  return std::nullopt;
}

template <class Backend>
typename IntertwiningEngine<Backend>::Trial IntertwiningEngine<Backend>::try_candidate(const Context& ctx,
                                                                                     BPoint v) const {
  const ScheduleEntry& s = ctx.sched;
  const std::size_t n = s.n;
  Trial t;
  auto fail = [&](std::vector<Dyadic> m) {
    t.margins = std::move(m);
    return t;
  };
  Stage out;
  out.schedule = s;
  BPoint e1 = be_.sub(be_.mul(be_.adjoint(v), v), be_.one());
  BPoint e2 = be_.sub(be_.mul(v, be_.adjoint(v)), be_.one());
  out.exact_unitary = be_.is_zero(e1) && be_.is_zero(e2);
  if (out.exact_unitary) {
    out.unitarity = Dyadic(0);
  } else {
    // ||v|| <= 1, scaling by (1 + eps)^-1 when the bound is not certified
    if (Rational(upper(v, n).to_rational()) > 1) {
      v = be_.scale(GaussianRational(1 / (1 + s.eps)), v);
      if (Rational(upper(v, n).to_rational()) > 1) return fail({upper(v, n)});
      e1 = be_.sub(be_.mul(be_.adjoint(v), v), be_.one());
      e2 = be_.sub(be_.mul(v, be_.adjoint(v)), be_.one());
    }
    out.unitarity = max(upper(e1, n), upper(e2, n));
    if (!(Rational(out.unitarity.to_rational()) < s.eps)) return fail({out.unitarity});
  }
  out.v = v;
  auto commutator = [&](const BPoint& x) { return upper(be_.sub(be_.mul(v, x), be_.mul(x, v)), n); };
  bool ok = true;
  for (const auto& x : ctx.gens) {
    out.gen_margins.push_back(commutator(x));
    ok = ok && Rational(out.gen_margins.back().to_rational()) < s.eta;
  }
  for (const auto& x : ctx.pulled) {
    out.pull_margins.push_back(commutator(x));
    ok = ok && Rational(out.pull_margins.back().to_rational()) < s.eta;
  }
  BPoint va = be_.adjoint(v);
  for (const auto& c : ctx.conj) {
    BPoint x = be_.mul(be_.mul(va, c), v);
    Dyadic m;
    auto a = find_pullback(x, s.eta, n, m);
    out.conj_margins.push_back(m);
    if (!a) {
      ok = false;
      continue;
    }
    out.pullbacks.push_back(*a);
  }
  if (!ok) return fail(out.margins());
  t.stage = std::move(out);
  return t;
}

template <class Backend>
const typename IntertwiningEngine<Backend>::Stage& IntertwiningEngine<Backend>::step() {
  auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = st_.size() + 1;
  Context ctx;
  // B_n from a_j, b_j (j <= n) and the earlier pullbacks
  Rational B(0);
  std::vector<APoint> as;
  std::vector<BPoint> bs;
  for (std::size_t j = 1; j <= n; ++j) {
    as.push_back(be_.a_point(j));
    bs.push_back(be_.b_point(j));
    B = std::max(B, std::max(bound_a(as.back()), bound_b(bs.back())));
  }
  for (const auto& s : st_)
    for (const auto& a : s.pullbacks) B = std::max(B, bound_a(a));
  ctx.sched = make_schedule(n, B);
  const long k = ctx.sched.k;

  Approx omega_all = witness(n - 1, k);
  BPoint oa = be_.adjoint(omega_all.point);
  for (const auto& b : bs) ctx.conj.push_back(be_.mul(be_.mul(oa, b), omega_all.point));
  for (const auto& s : st_)
    for (const auto& a : s.pullbacks) ctx.pulled.push_back(be_.phi(a));
  for (const auto& a : as) ctx.gens.push_back(be_.phi(a));

  std::uint64_t steps = 0;
  std::vector<Dyadic> best;
  auto better = [](const std::vector<Dyadic>& x, const std::vector<Dyadic>& y) {
    if (y.empty()) return true;
    Dyadic mx(0), my(0);
    for (const auto& d : x) mx = max(mx, d);
    for (const auto& d : y) my = max(my, d);
    return mx < my;
  };
  auto accept = [&](Trial& tr, const std::string& source) -> const Stage& {
    Stage& s = *tr.stage;
    s.source = source;
    s.steps = steps;
    // for v = omega(v~): ||v - v~|| < eps (0 when v~ is unitary)
    Rational e = s.exact_unitary ? Rational(0) : ctx.sched.eps;
    Rational slack = omega_all.error == 0 ? Rational(0) : ctx.sched.conj_slack;
    Rational worst(0);
    for (const auto& m : s.margins()) worst = std::max(worst, Rational(m.to_rational()));
    s.derived_bound = (2 * e + slack) * ctx.sched.bound + worst;
    if (!(s.derived_bound <= pow2(-static_cast<long>(n))))
      throw certification_error("stage " + std::to_string(n) + ": derived bound exceeds 2^-n");
    s.v_code = be_.code_b(s.v);
    for (const auto& a : s.pullbacks) s.a_codes.push_back(be_.code_a(a));
    s.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    st_.push_back(std::move(s));
    return st_.back();
  };

  if (opt_.use_supplier) {
    std::vector<BPoint> absorb = ctx.conj;
    std::vector<BPoint> commute = ctx.gens;
    commute.insert(commute.end(), ctx.pulled.begin(), ctx.pulled.end());
    for (auto& v : be_.supplier(n, commute, absorb)) {
      charge(steps, n, best);
      Trial tr = try_candidate(ctx, v);
      if (tr.stage) return accept(tr, "supplier");
      if (better(tr.margins, best)) best = tr.margins;
    }
  }
  for (std::uint64_t code = 1;; ++code) {
    charge(steps, n, best);
    auto v = be_.enumerate_b(code);
    if (!v) continue;
    Trial tr = try_candidate(ctx, *v);
    if (tr.stage) return accept(tr, "enumeration");
    if (better(tr.margins, best)) best = tr.margins;
  }
}

template <class Backend>
typename IntertwiningEngine<Backend>::Approx IntertwiningEngine<Backend>::omega(std::size_t i, long p) const {
  if (i == 0 || i > st_.size()) throw precondition_error("omega: no stage " + std::to_string(i));
  const Stage& s = st_[i - 1];
  if (s.exact_unitary) return {s.v, Rational(0)};
  // v~ s_N(v~* v~), s_N the Taylor polynomial of x^{-1/2} at 1
  long N = taylor_order(pow2(-p));
  BPoint x = be_.sub(be_.mul(be_.adjoint(s.v), s.v), be_.one());
  BPoint sum = be_.one(), pw = be_.one();
  for (long j = 1; j <= N; ++j) {
    pw = be_.mul(pw, x);
    sum = be_.add(sum, be_.scale(GaussianRational(inverse_sqrt_coefficient(j)), pw));
  }
  return {be_.mul(s.v, sum), pow2(-p)};
}

template <class Backend>
typename IntertwiningEngine<Backend>::Approx IntertwiningEngine<Backend>::witness(std::size_t n, long p) const {
  if (n > st_.size()) throw precondition_error("witness: only " + std::to_string(st_.size()) + " stages run");
  BPoint w = be_.one();
  bool exact = true;
  for (std::size_t i = 1; i <= n; ++i) {
    Approx o = omega(i, p);
    exact = exact && o.error == 0;
    w = be_.mul(w, o.point);
  }
  if (exact) return {w, Rational(0)};
  // ||prod w_i - prod v_i|| <= (1 + 2^-p)^n - 1
  Rational D = 1;
  for (std::size_t i = 0; i < n; ++i) D *= 1 + pow2(-p);
  return {w, D - 1};
}

template <class Backend>
typename IntertwiningEngine<Backend>::Approx IntertwiningEngine<Backend>::conjugate(std::size_t n, const APoint& a,
                                                                                 long p) const {
  Approx w = witness(n, p);
  BPoint x = be_.mul(be_.mul(w.point, be_.phi(a)), be_.adjoint(w.point));
  // ||W phi W* - V phi V*|| <= ||a|| D (2 + D)
  return {x, bound_a(a) * w.error * (2 + w.error)};
}

template <class Backend>
std::size_t IntertwiningEngine<Backend>::require_index(const APoint& a) const {
  if (be_.is_unit(a)) return 0;
  auto j = be_.index_of(a);
  if (!j) throw precondition_error("psi: the point is not one of the enumerated rational points");
  return *j;
}

template <class Backend>
typename IntertwiningEngine<Backend>::PsiResult IntertwiningEngine<Backend>::psi_approx(const APoint& a,
                                                                                      long m) const {
  if (m < 0) throw precondition_error("psi_approx: m must be >= 0");
  const std::size_t j = require_index(a);
  if (j == 0) {
    // V phi(1) V* = 1 at every stage
    PsiResult r;
    r.point = be_.one();
    r.code = be_.code_b(r.point);
    r.error = 0;
    return r;
  }
  // the Cauchy estimate ||w_n(a_j) - w_{n+1}(a_j)|| < 2^-(n+1) holds once j <= n + 1
  long me = std::max<long>(m, static_cast<long>(j) - 2);
  std::size_t need = static_cast<std::size_t>(me) + 1;
  if (st_.size() < need)
    throw precondition_error("psi_approx: needs stage " + std::to_string(need) + ", only " +
                             std::to_string(st_.size()) + " run");
  // p with ||a|| D (2 + D) <= 2^-(me + 2)
  Rational na = bound_a(a);
  long p = me + 2;
  while (na * truncation_slack(p, need) > pow2(-(me + 2))) ++p;
  Approx c = conjugate(need, a, p);
  PsiResult r;
  r.point = c.point;
  r.code = be_.code_b(c.point);
  // ||W_need(a) - psi(a)|| < sum_{i >= need} 2^-(i+1) = 2^-need
  r.error = c.error + pow2(-static_cast<long>(need));
  r.stages_used = need;
  r.p = p;
  if (!(r.error < pow2(-m)))
    throw certification_error("psi_approx: error bound not below 2^-m");
  return r;
}

template <class Backend>
Dyadic IntertwiningEngine<Backend>::cauchy_difference(const APoint& a, std::size_t n, long p) const {
  Approx x = conjugate(n, a, p), y = conjugate(n + 1, a, p);
  precision_scope ps(std::max<long>(working_precision(), p + 64));
  Dyadic d = upper(be_.sub(x.point, y.point), n + 1);
  return add(d, Dyadic::round(x.error + y.error, MPFR_RNDU), MPFR_RNDU);
}

template <class Backend>
typename IntertwiningEngine<Backend>::CauResult IntertwiningEngine<Backend>::verify_cau(const APoint& a,
                                                                                      long m) const {
  const std::size_t j = require_index(a);
  const std::size_t S = st_.size();
  if (S == 0 || (j > S + 1)) throw precondition_error("verify_cau: not enough stages for this point");
  const Rational target = pow2(-m);
  long p = m + 4;
  while (bound_a(a) * truncation_slack(p, S) > pow2(-(m + 4))) ++p;
  Approx top = conjugate(S, a, p);
  // tail past the last completed stage, from the stage invariant
  Rational tail = j == 0 ? Rational(0) : pow2(-static_cast<long>(S));
  for (std::size_t n = 1; n <= S; ++n) {
    Approx w = conjugate(n, a, p);
    Rational d(0);
    BPoint diff = be_.sub(w.point, top.point);
    if (!be_.is_zero(diff)) d = Rational(be_.norm(diff, m + 8).hi().to_rational());
    Rational bound = d + w.error + top.error + tail;
    if (bound < target) return {n, bound};
  }
  throw precondition_error("verify_cau: not enough stages to certify 2^-" + std::to_string(m));
}

}  // namespace cstar

#endif
