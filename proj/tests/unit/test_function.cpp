#include "cstar/function.hpp"
#include "gen.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace cstar;
using HP = HalfPowerMatrixFunction;

namespace {

HP random_hp(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<unsigned> ex(0, 3);
  HP f(n);
  for (int i = 0; i < 3; ++i) f.add_term(ex(rng), ex(rng), gen::random_matrix(rng, n, 3, 2));
  return f;
}

// ||f(t)|| at 200 bits
oracle::Big norm_at(const HP& f, const Rational& t) {
  std::size_t n = f.dim();
  oracle::Big st = sqrt(oracle::big(t)), su = sqrt(oracle::big(Rational(1) - t));
  oracle::Real acc(2 * n);
  for (const auto& [e, c] : f.terms()) {
    oracle::Big w = pow(st, e.first) * pow(su, e.second);
    oracle::Real ce = oracle::embed(c);
    for (std::size_t i = 0; i < acc.a.size(); ++i) acc.a[i] += w * ce.a[i];
  }
  return oracle::spectral_norm(acc);
}

}  // namespace

TEST(HpEval, Examples) {
  EXPECT_TRUE(hp_eval(HP::iota(1), make_rational(1, 4), 30)(0, 0).re.contains(make_rational(1, 4)));
  IntervalMatrix a = hp_eval(HP::one_minus_iota_sqrt(1), make_rational(3, 4), 30);
  EXPECT_TRUE(a(0, 0).re.contains(make_rational(1, 2)));
  EXPECT_LE(a(0, 0).re.width(), Dyadic::pow2(-30));
  HP g = HP::iota_sqrt(1) * HP::one_minus_iota_sqrt(1);
  EXPECT_TRUE(hp_eval(g, make_rational(1, 2), 30)(0, 0).re.contains(make_rational(1, 2)));
  EXPECT_THROW(hp_eval(g, make_rational(3, 2), 30), precondition_error);
}

TEST(HpAlgebra, AdjointOfProduct) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    HP f = random_hp(rng, 2), g = random_hp(rng, 2);
    EXPECT_EQ((f * g).adjoint(), g.adjoint() * f.adjoint());
    EXPECT_EQ(f.adjoint().adjoint(), f);
  }
}

TEST(SupNorm, Examples) {
  EXPECT_TRUE(sup_norm(HP::iota(1), 20).contains(Rational(1)));
  auto half = sup_norm(HP::iota_sqrt(1) * HP::one_minus_iota_sqrt(1), 20);
  EXPECT_TRUE(half.contains(make_rational(1, 2)));
  EXPECT_LE(half.width(), Dyadic::pow2(-20));
  auto e12 = sup_norm(HP::monomial(0, 1, RationalMatrix::unit(2, 0, 1)), 20);
  EXPECT_TRUE(e12.contains(Rational(1)));
}

TEST(SupNorm, BudgetExhaustion) {
  SupNormOptions opt;
  opt.budget = 4;
  EXPECT_THROW(sup_norm(HP::iota_sqrt(1) * HP::one_minus_iota_sqrt(1), 30, opt), infeasible_error);
}

TEST(SupNorm, AgainstDenseGrid) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 3; ++trial) {
    HP f = random_hp(rng, 2);
    long k = 12;
    auto iv = sup_norm(f, k);
    EXPECT_LE(iv.width(), Dyadic::pow2(-k));
    double best = 0;
    const int points = 10000;
    for (int i = 0; i <= points; ++i) best = std::max(best, oracle::to_double(norm_at(f, make_rational(i, points))));
    double slack = f.holder_constant().get_d() * std::sqrt(0.5 / points);
    EXPECT_GE(iv.hi().to_double(), best - 1e-12) << trial;
    EXPECT_LE(iv.lo().to_double(), best + slack) << trial;
  }
}

TEST(SupNorm, DominatesSampledPoints) {
  std::mt19937_64 rng(11);
  HP f = random_hp(rng, 3);
  auto iv = sup_norm(f, 10);
  for (int i = 0; i <= 16; ++i)
    EXPECT_LE(matrix_norm(hp_eval(f, make_rational(i, 16), 30), 30).lo(), iv.hi());
}

TEST(Reparam, Examples) {
  CertifiedFunction f = certified(HP::iota(1));
  CertifiedFunction g = compose_reparam(f, Reparam::lower_half);
  EXPECT_TRUE(g.eval(DyadicInterval(1), 30)(0, 0).re.contains(make_rational(1, 2)));
  std::mt19937_64 rng(13);
  HP h = random_hp(rng, 2);
  CertifiedFunction c = compose_reparam(certified(h), Reparam::midpoint);
  IntervalMatrix mid = hp_eval(h, make_rational(1, 2), 30);
  for (int i = 0; i <= 4; ++i)
    EXPECT_TRUE(c.eval(DyadicInterval::from_rational(make_rational(i, 4)), 30).contains(mid.mid()) ||
                c.eval(DyadicInterval::from_rational(make_rational(i, 4)), 30).max_entry_width() < Dyadic::pow2(-20));
  EXPECT_TRUE(c.modulus.is_zero());
  CertifiedFunction u = compose_reparam(certified(HP::one_minus_iota_sqrt(1)), Reparam::upper_half);
  DyadicInterval root_half = sqrt(DyadicInterval(Dyadic::pow2(-1)));
  EXPECT_TRUE(u.eval(DyadicInterval(0), 30)(0, 0).re.overlaps(root_half));
}

TEST(Reparam, ModulusHoldsOnSamples) {
  std::mt19937_64 rng(17);
  HP h = random_hp(rng, 2);
  for (Reparam xi : {Reparam::lower_half, Reparam::upper_half}) {
    CertifiedFunction c = compose_reparam(certified(h), xi);
    for (int i = 0; i < 20; ++i) {
      Rational s = make_rational(i, 20), t = make_rational(i * i % 20, 20);
      if (s == t) continue;
      IntervalMatrix d = c.eval(DyadicInterval::from_rational(s), 40) - c.eval(DyadicInterval::from_rational(t), 40);
      double bound = c.modulus.to_double() * std::sqrt(std::abs(Rational(s - t).get_d()));
      EXPECT_LE(matrix_norm(d, 30).lo().to_double(), bound + 1e-9);
    }
  }
}

TEST(BoundaryDistance, Examples) {
  std::size_t p = 2, q = 3;
  HP a1 = kron(HP::one_minus_iota_sqrt(p), RationalMatrix::identity(q));
  a1 = HP::monomial(0, 1, kron(RationalMatrix::unit(p, 0, 0), RationalMatrix::identity(q)));
  EXPECT_LE(boundary_distance(a1, 0, p, q, 20), Dyadic::pow2(-20));
  HP b = HP::monomial(1, 0, kron(RationalMatrix::identity(p), RationalMatrix::unit(q, 0, 0)));
  EXPECT_LE(boundary_distance(b, 0, p, q, 20), Dyadic::pow2(-20));
  HP c = HP::constant(kron(RationalMatrix::unit(p, 0, 1), RationalMatrix::unit(q, 0, 1)));
  EXPECT_GE(boundary_distance(c, 1, p, q, 20), Dyadic::pow2(-1));
  EXPECT_THROW(boundary_distance(c, 1, 3, 3, 20), precondition_error);
  // interval path agrees
  EXPECT_GE(boundary_distance(certified(c), 1, p, q, 20), Dyadic::pow2(-1));
  EXPECT_LE(boundary_distance(certified(a1), 0, p, q, 20), Dyadic::pow2(-19));
}
