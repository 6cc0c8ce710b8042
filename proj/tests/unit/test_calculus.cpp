#include "cstar/calculus.hpp"
#include "gen.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace cstar;

namespace {

// sup over a 1001-point grid of [1/2, 3/2] of |x^{-1/2} - s_N(x)|
double grid_error(long N) {
  double worst = 0;
  for (int i = 0; i <= 1000; ++i) {
    Rational x = make_rational(500 + i, 1000);
    oracle::Big exact = 1 / sqrt(oracle::big(x));
    oracle::Big approx = oracle::big(taylor_inverse_sqrt(x, N));
    worst = std::max(worst, oracle::to_double(abs(exact - approx)));
  }
  return worst;
}

RationalMatrix almost(std::mt19937_64& rng, std::size_t n) {
  // (7/8) u + (1/16) r with ||r|| <= 1 via entry scaling
  RationalMatrix u = gen::random_unitary(rng, n, 6);
  RationalMatrix r = gen::random_matrix(rng, n, 1, 1);
  Rational scale = make_rational(1, 16 * 2 * static_cast<long>(n));
  return make_rational(7, 8) * u + scale * r;
}

}  // namespace

TEST(TaylorOrder, FrozenValues) {
  EXPECT_EQ(taylor_order(1), 1);
  EXPECT_EQ(taylor_order(make_rational(1, 4)), 3);
  EXPECT_EQ(taylor_order(pow2(-20)), 21);
  EXPECT_THROW(taylor_order(0), precondition_error);
  EXPECT_THROW(taylor_order(-1), precondition_error);
}

TEST(TaylorOrder, GridSoundness) {
  for (Rational delta : {Rational(1), make_rational(1, 4), pow2(-10), pow2(-20)})
    EXPECT_LT(grid_error(taylor_order(delta)), delta.get_d());
}

TEST(TaylorOrder, IntervalSoundness) {
  // the binomial coefficients are bounded by 1 and |x-1| <= 1/2
  for (long j = 0; j < 40; ++j) EXPECT_LE(abs(inverse_sqrt_coefficient(j)), 1);
}

TEST(Omega, UnitaryIsFixed) {
  std::mt19937_64 rng(3);
  RationalMatrix u = gen::random_unitary(rng, 3);
  auto r = omega_n(make_almost_unitary(u, make_rational(1, 4)), 12);
  EXPECT_LT(matrix_norm(r.w - u, 40).hi().cmp(pow2(-12)), 0);
}

TEST(Omega, ScaledUnitary) {
  std::mt19937_64 rng(5);
  RationalMatrix u = gen::random_unitary(rng, 3);
  Rational c = Rational(1) - pow2(-4);
  auto au = make_almost_unitary(c * u, make_rational(1, 8));
  auto r = omega_n(au, 10);
  EXPECT_LT(matrix_norm(r.w - u, 40).hi().cmp(pow2(-10)), 0);
}

TEST(Omega, RandomAgainstPolarOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 4; ++trial) {
    RationalMatrix a = almost(rng, 4);
    auto au = make_almost_unitary(a, make_rational(1, 2));
    oracle::Real polar = oracle::polar_unitary(a);
    for (long n : {4L, 10L, 20L}) {
      auto r = omega_n(au, n);
      oracle::Big d = oracle::spectral_norm(oracle::embed(r.w) - polar);
      EXPECT_LT(oracle::to_double(d), std::ldexp(1.0, -n)) << trial << " " << n;
    }
  }
}

TEST(Omega, StabilityAndNearUnitarity) {
  std::mt19937_64 rng(11);
  RationalMatrix a = almost(rng, 3);
  auto au = make_almost_unitary(a, make_rational(1, 2));
  for (long n = 2; n < 12; n += 3) {
    auto w0 = omega_n(au, n).w, w1 = omega_n(au, n + 1).w;
    EXPECT_LE(matrix_norm(w0 - w1, 30).hi().to_rational(), pow2(-n) + pow2(-(n + 1)));
    EXPECT_LE(matrix_norm(w0.adjoint() * w0 - RationalMatrix::identity(3), 30).hi().to_rational(), pow2(-n + 2));
  }
}

TEST(Omega, RejectsLargeEps) {
  RationalMatrix a = RationalMatrix::identity(2);
  EXPECT_THROW(make_almost_unitary(a, make_rational(3, 4)), precondition_error);
  RationalMatrix b = make_rational(1, 2) * RationalMatrix::identity(2);
  EXPECT_THROW(make_almost_unitary(b, make_rational(1, 2)), precondition_error);
}

TEST(UnitaryPathTest, ConstantPath) {
  std::mt19937_64 rng(13);
  RationalMatrix u = gen::random_unitary(rng, 3);
  UnitaryPath p(u, u, 30);
  IntervalMatrix w = p.eval(make_rational(1, 2), 30);
  EXPECT_LT((w - IntervalMatrix(u)).frobenius_upper(), Dyadic::pow2(-28));
}

TEST(UnitaryPathTest, EndpointsAndUnitarity) {
  std::mt19937_64 rng(17);
  RationalMatrix u = gen::random_unitary(rng, 4, 6), v = gen::random_unitary(rng, 4, 6);
  long k = 30;
  UnitaryPath p(u, v, k);
  EXPECT_LT(p.endpoint_error(), Dyadic::pow2(-k));
  EXPECT_LT((p.eval(0, k) - IntervalMatrix(u)).frobenius_upper(), Dyadic::pow2(-k + 1));
  EXPECT_LT((p.eval(1, k) - IntervalMatrix(v)).frobenius_upper(), Dyadic::pow2(-k + 1));
  for (int i = 0; i <= 16; ++i) {
    IntervalMatrix w = p.eval(make_rational(i, 16), k);
    Dyadic defect = (w.adjoint() * w - IntervalMatrix::identity(4)).frobenius_upper();
    EXPECT_LE(defect, Dyadic::pow2(-k + 2));
  }
}

TEST(UnitaryPathTest, LipschitzBound) {
  std::mt19937_64 rng(19);
  RationalMatrix u = gen::random_unitary(rng, 3, 5), v = gen::random_unitary(rng, 3, 5);
  UnitaryPath p(u, v, 30);
  EXPECT_LT(p.lipschitz().to_double(), 8 * M_PI);
  for (int i = 0; i < 8; ++i) {
    Rational s = make_rational(i, 8), t = make_rational(i + 1, 8) - make_rational(1, 32);
    Dyadic d = matrix_norm(p.eval(s, 30) - p.eval(t, 30), 20).lo();
    EXPECT_LE(d.to_rational(), p.lipschitz().to_rational() * (t - s));
  }
}
