#include "cstar/jiangsu.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace cstar {

namespace {

// trial division is cheap up to here; beyond it a strong probable-prime
// test (GMP: Baillie-PSW plus Miller-Rabin rounds) is used
const Integer kTrialLimit = Integer(1) << 44;

bool prime_test(const Integer& n) {
  if (n < kTrialLimit) return is_prime(n);
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

Integer prime_after(const Integer& n) {
  Integer c = n + 1;
  while (!prime_test(c)) ++c;
  return c;
}

JiangSuStage next_stage(const Integer& p, const Integer& q, long m) {
  JiangSuStage st;
  st.m = m;
  st.p = p;
  st.q = q;
  st.k = prime_after(2 * p * q);
  st.l = prime_after(st.k);
  st.p_next = st.k * p;
  st.q_next = st.l * q;
  Integer kl = st.k * st.l;
  st.r = kl % st.q_next;
  st.s = kl % st.p_next;
  st.alpha = st.r * q / st.q_next;
  st.beta = (kl - st.r) / st.q_next;
  st.alpha_v = st.s * p / st.p_next;
  st.beta_v = (kl - st.s) / st.p_next;
  return st;
}

std::size_t to_size(const Integer& z) {
  if (z < 0 || !z.fits_ulong_p()) throw infeasible_error("dimension does not fit a machine word");
  return z.get_ui();
}

}  // namespace

std::vector<std::string> stage_invariant_failures(const JiangSuStage& st) {
  std::vector<std::string> bad;
  Integer two_pq = 2 * st.p * st.q;
  if (!(st.k > two_pq && prime_test(st.k))) bad.push_back("k prime > 2pq");
  if (!(st.l > st.k && prime_test(st.l))) bad.push_back("l prime > k");
  for (Integer c = two_pq + 1; c < st.l; ++c)
    if (c != st.k && prime_test(c)) {
      bad.push_back("k, l are the first two primes > 2pq");
      break;
    }
  if (st.p_next != st.k * st.p || st.q_next != st.l * st.q) bad.push_back("p_next = kp, q_next = lq");
  Integer g;
  mpz_gcd(g.get_mpz_t(), st.p_next.get_mpz_t(), st.q_next.get_mpz_t());
  if (g != 1) bad.push_back("gcd(p_next, q_next) = 1");
  Integer kl = st.k * st.l;
  if (st.r * st.q != st.alpha * st.q_next) bad.push_back("r q = alpha q_next");
  if (kl - st.r != st.beta * st.q_next) bad.push_back("kl - r = beta q_next");
  if (st.s * st.p != st.alpha_v * st.p_next) bad.push_back("s p = alpha_v p_next");
  if (kl - st.s != st.beta_v * st.p_next) bad.push_back("kl - s = beta_v p_next");
  if (!(st.r > 0 && st.s > 0 && st.r + st.s < kl)) bad.push_back("all three slot classes nonempty");
  return bad;
}

JiangSuStage stage_params(long m) {
  if (m < 0) throw precondition_error("stage_params: m must be >= 0");
  static std::mutex mu;
  static std::vector<JiangSuStage> cache;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<long>(cache.size()) <= m) {
    Integer p = 2, q = 3;
    if (!cache.empty()) {
      p = cache.back().p_next;
      q = cache.back().q_next;
    }
    JiangSuStage st = next_stage(p, q, static_cast<long>(cache.size()));
    auto bad = stage_invariant_failures(st);
    if (!bad.empty()) throw std::logic_error("stage " + std::to_string(st.m) + ": invariant failed: " + bad.front());
    cache.push_back(st);
  }
  return cache[m];
}

Reparam slot_reparam(const JiangSuStage& st, std::size_t i) {
  Integer kl = st.k * st.l;
  if (Integer(static_cast<unsigned long>(i)) < st.r) return Reparam::lower_half;
  if (Integer(static_cast<unsigned long>(i)) < kl - st.s) return Reparam::midpoint;
  return Reparam::upper_half;
}

bool PermutationUnitary::is_permutation() const {
  std::vector<char> seen(sigma.size(), 0);
  for (auto x : sigma) {
    if (x >= sigma.size() || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

std::vector<std::vector<std::uint32_t>> PermutationUnitary::cycles() const {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<char> seen(sigma.size(), 0);
  for (std::uint32_t x = 0; x < sigma.size(); ++x) {
    if (seen[x]) continue;
    std::vector<std::uint32_t> c;
    for (std::uint32_t y = x; !seen[y]; y = sigma[y]) {
      seen[y] = 1;
      c.push_back(y);
    }
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

struct Layout {
  std::size_t p, q, P, Q, blk, kl, r, s, alpha, alpha_v;
};

Layout layout(long m) {
  JiangSuStage st = stage_params(m);
  Integer n = st.p_next * st.q_next;
  if (n > Integer(1) << 24)
    throw infeasible_error("stage " + std::to_string(m) + ": dimension " + to_string(n) + " beyond numeric budget");
  Layout L;
  L.p = to_size(st.p);
  L.q = to_size(st.q);
  L.P = to_size(st.p_next);
  L.Q = to_size(st.q_next);
  L.blk = L.p * L.q;
  L.kl = to_size(st.k * st.l);
  L.r = to_size(st.r);
  L.s = to_size(st.s);
  L.alpha = to_size(st.alpha);
  L.alpha_v = to_size(st.alpha_v);
  return L;
}

void check_built(const PermutationUnitary& u, const char* which, long m) {
  if (!u.is_permutation())
    throw std::logic_error(std::string("build_") + which + "(" + std::to_string(m) +
                           "): index matching did not produce a permutation");
}

}  // namespace

// At t = 0 the lower slots hold f(0) = x (x) 1_q and the others f(1/2) = y.
// The q columns of each x-slot become alpha*q_next copies of x laid out as
// (copy / Q) * p + a, copy % Q; the y-slots become beta*Q copies of y in
// rows alpha*p + g*pq + c, column copy % Q.
PermutationUnitary build_u(long m) {
  Layout L = layout(m);
  PermutationUnitary u;
  u.sigma.assign(L.P * L.Q, 0);
  std::size_t xcopy = 0, ycopy = 0;
  for (std::size_t i = 0; i < L.kl; ++i) {
    if (i < L.r) {
      for (std::size_t b = 0; b < L.q; ++b, ++xcopy) {
        std::size_t B = xcopy % L.Q, off = (xcopy / L.Q) * L.p;
        for (std::size_t a = 0; a < L.p; ++a) u.sigma[i * L.blk + a * L.q + b] = (off + a) * L.Q + B;
      }
    } else {
      std::size_t B = ycopy % L.Q, g = ycopy / L.Q;
      ++ycopy;
      for (std::size_t c = 0; c < L.blk; ++c) u.sigma[i * L.blk + c] = (L.alpha * L.p + g * L.blk + c) * L.Q + B;
    }
  }
  check_built(u, "u", m);
  return u;
}

// Mirror image at t = 1: upper slots hold f(1) = 1_p (x) z.
PermutationUnitary build_v(long m) {
  Layout L = layout(m);
  PermutationUnitary v;
  v.sigma.assign(L.P * L.Q, 0);
  std::size_t zcopy = 0, ycopy = 0;
  for (std::size_t i = 0; i < L.kl; ++i) {
    if (i >= L.kl - L.s) {
      for (std::size_t a = 0; a < L.p; ++a, ++zcopy) {
        std::size_t A = zcopy % L.P, off = (zcopy / L.P) * L.q;
        for (std::size_t b = 0; b < L.q; ++b) v.sigma[i * L.blk + a * L.q + b] = A * L.Q + off + b;
      }
    } else {
      std::size_t A = ycopy % L.P, g = ycopy / L.P;
      ++ycopy;
      for (std::size_t c = 0; c < L.blk; ++c) v.sigma[i * L.blk + c] = A * L.Q + L.alpha_v * L.q + g * L.blk + c;
    }
  }
  check_built(v, "v", m);
  return v;
}

// ---- circulant logarithms

namespace {

constexpr long kCirculantPrec = 128;

// signed index of the eigenvalue omega^j on the branch [-pi, pi)
long branch_index(std::size_t j, std::size_t L) {
  return 2 * j >= L ? static_cast<long>(j) - static_cast<long>(L) : static_cast<long>(j);
}

std::vector<ComplexInterval> roots_of_unity(std::size_t L) {
  std::vector<ComplexInterval> w(L);
  DyadicInterval two_pi = mul_2exp(DyadicInterval::pi(), 1);
  for (std::size_t j = 0; j < L; ++j)
    w[j] = ComplexInterval::expi(two_pi * DyadicInterval::from_rational(Rational(long(j), long(L))));
  return w;
}

// (1/L) sum_j z_j omega^{dj}
std::vector<ComplexInterval> inverse_dft(const std::vector<ComplexInterval>& z) {
  std::size_t L = z.size();
  auto w = roots_of_unity(L);
  DyadicInterval invL = DyadicInterval::from_rational(Rational(1, long(L)));
  std::vector<ComplexInterval> c(L);
  for (std::size_t d = 0; d < L; ++d) {
    ComplexInterval acc(0);
    for (std::size_t j = 0; j < L; ++j) acc += z[j] * w[(d * j) % L];
    c[d] = invL * acc;
  }
  return c;
}

}  // namespace

std::vector<ComplexInterval> cycle_exp_coefficients(std::size_t L, const Rational& s) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, Rational>, std::vector<ComplexInterval>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({L, s});
    if (it != cache.end()) return it->second;
  }
  precision_scope ps(kCirculantPrec);
  std::vector<ComplexInterval> c(L, ComplexInterval(0));
  if (s == 0) {
    c[0] = ComplexInterval(1);
  } else {
    DyadicInterval two_pi = mul_2exp(DyadicInterval::pi(), 1);
    std::vector<ComplexInterval> z(L);
    for (std::size_t j = 0; j < L; ++j)
      z[j] = ComplexInterval::expi(two_pi * DyadicInterval::from_rational(s * branch_index(j, L) / long(L)));
    c = inverse_dft(z);
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(L, s), c);
  return c;
}

std::vector<ComplexInterval> cycle_log_coefficients(std::size_t L) {
  precision_scope ps(kCirculantPrec);
  DyadicInterval two_pi = mul_2exp(DyadicInterval::pi(), 1);
  std::vector<ComplexInterval> z(L);
  for (std::size_t j = 0; j < L; ++j)
    z[j] = ComplexInterval(two_pi * DyadicInterval::from_rational(Rational(branch_index(j, L), long(L))));
  return inverse_dft(z);
}

// ---- the map at one stage

JiangSuMap::JiangSuMap(long m)
    : st_(stage_params(m)),
      u_(build_u(m)),
      v_(build_v(m)),
      src_(to_size(st_.p), to_size(st_.q)) {
  n_ = u_.dim();
  blk_ = to_size(st_.p * st_.q);
  kl_ = to_size(st_.k * st_.l);
  ucyc_ = u_.cycles();
  vcyc_ = v_.cycles();
}

HalfPowerMatrixFunction JiangSuMap::realize(const StarPoly& f) const {
  src_.check_point(f);
  Realized r = cstar::realize(src_, f);
  if (auto* s = std::get_if<SparseHalfPower>(&r)) return s->dense();
  if (auto* h = std::get_if<HalfPowerMatrixFunction>(&r)) return *h;
  return HalfPowerMatrixFunction::constant(std::get<RationalMatrix>(r));
}

std::shared_ptr<const JiangSuMap> jiangsu_map(long m) {
  if (m != 0)
    throw infeasible_error("Jiang-Su numerics are limited to the stage 0 -> 1 map (stage " + std::to_string(m) +
                           " has dimension " + to_string(Integer(stage_params(m).p_next * stage_params(m).q_next)) + ")");
  static std::mutex mu;
  static std::shared_ptr<const JiangSuMap> cached;
  std::lock_guard<std::mutex> lock(mu);
  if (!cached) cached = std::make_shared<JiangSuMap>(0);
  return cached;
}

DyadicInterval dd_norm(std::size_t p, std::size_t q, const StarPoly& point, long k) {
  return DimensionDropPresentation(p, q).norm(point, k);
}

// ---- polynomial points

std::vector<RationalMatrix> polynomial_coefficients(const HalfPowerMatrixFunction& f) {
  std::vector<RationalMatrix> out;
  auto coeff = [&](std::size_t j) -> RationalMatrix& {
    while (out.size() <= j) out.emplace_back(f.dim());
    return out[j];
  };
  for (const auto& [e, c] : f.terms()) {
    auto [r, s] = e;
    if (r % 2 || s % 2) throw precondition_error("polynomial_coefficients: odd half-power exponent");
    // t^{r/2} (1 - t)^{s/2}
    Integer binom = 1;
    unsigned S = s / 2;
    for (unsigned i = 0; i <= S; ++i) {
      GaussianRational w(Rational(i % 2 ? -binom : binom));
      coeff(r / 2 + i) += w * c;
      binom = binom * (S - i) / (i + 1);
    }
  }
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

StarPoly polynomial_point(std::size_t p, std::size_t q, const std::vector<RationalMatrix>& coeffs) {
  const std::size_t n = p * q;
  if (coeffs.empty()) return StarPoly();
  for (const auto& c : coeffs)
    if (c.dim() != n) throw precondition_error("polynomial_point: coefficient dimension mismatch");
  RationalMatrix F0 = coeffs[0], F1(n);
  for (const auto& c : coeffs) F1 += c;
  RationalMatrix X = partial_trace_expectation(F0, p, q, 1);
  RationalMatrix Y = partial_trace_expectation(F1, p, q, 2);
  if (!(kron(X, RationalMatrix::identity(q)) == F0)) throw precondition_error("polynomial_point: F(0) not in M_p (x) 1");
  if (!(kron(RationalMatrix::identity(p), Y) == F1)) throw precondition_error("polynomial_point: F(1) not in 1 (x) M_q");

  // H = F - (1 - t) F(0) - t F(1) vanishes at 0 and 1; G = H / (t (1 - t))
  std::vector<RationalMatrix> H = coeffs;
  if (H.size() < 2) H.resize(2, RationalMatrix(n));
  H[0] -= F0;
  H[1] -= F1 - F0;
  if (!H[0].is_zero()) throw std::logic_error("polynomial_point: H(0) != 0");
  std::vector<RationalMatrix> G;
  RationalMatrix prev(n);
  for (std::size_t j = 1; j < H.size(); ++j) {
    prev = H[j] + prev;  // G_{j-1} = H_j + G_{j-2}
    G.push_back(prev);
  }
  if (!G.back().is_zero()) throw std::logic_error("polynomial_point: H(1) != 0");
  G.pop_back();

  auto a = [&](std::size_t i, bool star) { return StarPoly::gen(i, star); };
  auto b = [&](std::size_t j, bool star) { return StarPoly::gen(p + j, star); };
  StarPoly out;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = 0; k < p; ++k)
      if (!X(i, k).is_zero()) out += X(i, k) * (a(i, true) * a(k, false));
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t l = 0; l < q; ++l)
      if (!Y(j, l).is_zero()) out += Y(j, l) * (b(j, true) * b(l, false));
  // t^{d} (1 - t) e_ik (x) e_jl = (a_i* a_k)(b_j* (b_0 b_0*)^{d-1} b_l)
  StarPoly bb = b(0, false) * b(0, true);
  for (std::size_t d = 0; d < G.size(); ++d) {
    StarPoly power = StarPoly::unit();
    for (std::size_t e = 0; e < d; ++e) power = power * bb;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const GaussianRational& c = G[d](x, y);
        if (c.is_zero()) continue;
        std::size_t i = x / q, j = x % q, k = y / q, l = y % q;
        out += c * (a(i, true) * a(k, false) * b(j, true) * power * b(l, false));
      }
  }
  return out;
}

// ---- presentation

std::shared_ptr<LimitPresentation> jiangsu_presentation() {
  auto stages = [](std::size_t m) -> PresentationPtr {
    JiangSuStage st = stage_params(static_cast<long>(m));
    return std::make_shared<DimensionDropPresentation>(to_size(st.p), to_size(st.q));
  };
  auto maps = [](std::size_t m) {
    ComputableMap f;
    f.exact = false;
    f.image = [m](const StarPoly& p, long) {
      // unital: scalars map to scalars
      for (const auto& [w, c] : p.terms())
        if (!w.empty())
          throw infeasible_error("Jiang-Su stage " + std::to_string(m) +
                                 ": images of non-scalar points are not materialized as rational points "
                                 "(use the structured candidate)");
      return p;
    };
    return f;
  };
  // stage records exist for m <= 3; numerics stop at stage 1
  return std::make_shared<LimitPresentation>(stages, maps, true, 4, 1, "jiangsu");
}

}  // namespace cstar
