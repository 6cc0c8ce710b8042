#include "cstar/uhf.hpp"
#include "gen.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace cstar;

namespace {

std::shared_ptr<UhfPresentation> two_inf() { return uhf_presentation(SupernaturalNumber::two_infinity()); }

// e_ij at stage s of M_{2^inf}
StarPoly e(std::size_t s, std::size_t i, std::size_t j) {
  std::uint64_t d = std::uint64_t(1) << s;
  return StarPoly::gen(UhfPresentation::unit_generator(s, d, i, j));
}

std::vector<LegPoint> first_copy_units(std::size_t n) {
  std::vector<LegPoint> out;
  for (std::size_t i = 0; i < (1u << n); ++i)
    for (std::size_t j = 0; j < (1u << n); ++j) out.push_back(LegPoint::unit(n, 0, i, j));
  return out;
}

std::vector<LegPoint> second_copy_units(std::size_t n) {
  std::vector<LegPoint> out;
  for (std::size_t i = 0; i < (1u << n); ++i)
    for (std::size_t j = 0; j < (1u << n); ++j) out.push_back(LegPoint::unit(0, n, i, j));
  return out;
}

}  // namespace

TEST(Supernatural, TwoInfinity) {
  auto n = SupernaturalNumber::two_infinity();
  EXPECT_TRUE(n.infinite_type());
  EXPECT_EQ(n.truncation(0), 1u);
  EXPECT_EQ(n.truncation(5), 32u);
  EXPECT_EQ(n.support(7), std::vector<std::uint64_t>{2});
}

TEST(Supernatural, MixedAndFinite) {
  auto n = SupernaturalNumber::parse("2^2*3^inf*5^inf");
  EXPECT_EQ(*n.prime(1), 2u);
  EXPECT_EQ(*n.prime(2), 2u);
  EXPECT_EQ(*n.prime(3), 3u);
  EXPECT_EQ(*n.prime(4), 5u);
  EXPECT_EQ(*n.prime(5), 3u);
  EXPECT_EQ(n.truncation(4), 60u);
  for (std::size_t s = 1; s < 8; ++s) EXPECT_EQ(n.truncation(s + 1) % n.truncation(s), 0u);
  auto f = SupernaturalNumber::parse("7^2");
  EXPECT_FALSE(f.infinite_type());
  EXPECT_EQ(f.truncation(2), 49u);
  EXPECT_THROW(f.truncation(3), infeasible_error);
}

TEST(Supernatural, BadInput) {
  EXPECT_THROW(SupernaturalNumber::parse("4^inf"), parse_error);
  EXPECT_THROW(SupernaturalNumber::parse("2^x"), parse_error);
  EXPECT_THROW(SupernaturalNumber::parse("two"), parse_error);
  SupernaturalNumber bad([](std::size_t) { return std::optional<std::uint64_t>(6); }, true, "bad");
  EXPECT_THROW(bad.truncation(1), std::logic_error);
}

TEST(Supernatural, StalledEnumerationIsInfeasible) {
  SupernaturalNumber partial(
      [](std::size_t i) { return i <= 2 ? std::optional<std::uint64_t>(2) : std::nullopt; }, true, "2^stall");
  auto P = uhf_presentation(partial);
  EXPECT_TRUE(P->norm(e(2, 1, 1), 10).contains(Rational(1)));
  EXPECT_THROW(P->norm(e(3, 1, 1), 10), infeasible_error);
}

TEST(UhfPresentation, Examples) {
  auto P = two_inf();
  EXPECT_EQ(P->descriptor(), "uhf:2^inf");
  EXPECT_TRUE(P->norm(e(1, 0, 0), 20).contains(Rational(1)));
  // x (x) 1 at stage 2 is x at stage 1
  StarPoly x = e(1, 0, 1), x2 = e(2, 0, 2) + e(2, 1, 3);
  DyadicInterval d = P->norm(x - x2, 40);
  EXPECT_TRUE(d.contains(Rational(0)));
  EXPECT_LT(d.hi(), Dyadic::pow2(-30));
  // y on the second leg commutes with stage-1 points
  StarPoly y = e(2, 0, 1) + e(2, 2, 3);
  EXPECT_TRUE(P->norm(x * y - y * x, 20).contains(Rational(0)));
  EXPECT_TRUE(P->norm(*P->unit_resolution() - StarPoly::unit(), 20).contains(Rational(0)));
}

TEST(UhfPresentation, MatchesOracle) {
  auto P = two_inf();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 4; ++trial) {
    RationalMatrix a = gen::random_matrix(rng, 2), b = gen::random_matrix(rng, 4);
    StarPoly pa, pb;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) pa += a(i, j) * e(1, i, j);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) pb += b(i, j) * e(2, i, j);
    RationalMatrix A = kron(a, RationalMatrix::identity(2));
    RationalMatrix dense = A * b + b.adjoint() - A.adjoint();
    StarPoly p = pa * pb + pb.adjoint() - pa.adjoint();
    DyadicInterval r = P->norm(p, 30);
    EXPECT_TRUE(oracle::contains(r, oracle::spectral_norm(dense))) << trial;
    EXPECT_LE(r.width(), Dyadic::pow2(-30));
  }
}

TEST(UhfTensor, NormsAndUnit) {
  auto A = two_inf();
  UhfTensorPresentation B(A, A);
  EXPECT_EQ(B.descriptor(), "tensor(uhf:2^inf,uhf:2^inf)");
  auto g = [](std::uint64_t m, std::uint64_t p) { return StarPoly::gen(pair64(m, p)); };
  std::uint64_t e01 = UhfPresentation::unit_generator(1, 2, 0, 1), one = LimitPresentation::generator(0, 0);
  EXPECT_TRUE(B.norm(g(e01, e01), 20).contains(Rational(1)));
  EXPECT_TRUE(B.norm(*B.unit_resolution() - StarPoly::unit(), 20).contains(Rational(0)));
  // a (x) 1 and 1 (x) b commute
  StarPoly x = g(e01, one), y = g(one, e01);
  EXPECT_TRUE(B.norm(x * y - y * x, 20).contains(Rational(0)));
  EXPECT_TRUE(B.norm(x * y - g(e01, e01), 20).contains(Rational(0)));
}

TEST(LegPoint, LiftTrimAndPoints) {
  auto A = two_inf();
  UhfTensorPresentation B(A, A);
  LegPoint x = LegPoint::unit(1, 1, 1, 2) + GaussianRational(make_rational(1, 3), 1) * LegPoint::unit(1, 1, 3, 3);
  LegPoint big = lift(x, 3, 2);
  EXPECT_EQ(big.dim(), 32u);
  EXPECT_EQ(big, x);
  LegPoint t = trim(big);
  EXPECT_EQ(t.left, 1u);
  EXPECT_EQ(t.right, 1u);
  EXPECT_EQ(t.m, x.m);
  EXPECT_EQ(leg_point_from_tensor(B, uhf_tensor_point(x)), x);
  LegPoint a = LegPoint::unit(2, 0, 3, 1);
  EXPECT_EQ(leg_point_from_uhf(*A, uhf_point(a)), a);
  EXPECT_THROW(uhf_point(x), precondition_error);
  // |1/3 + i| = sqrt(10)/3 = 1.0540925...
  DyadicInterval nb = norm(big, 20);
  EXPECT_GT(nb.lo(), Dyadic::from_double(1.05409));
  EXPECT_LT(nb.hi(), Dyadic::from_double(1.05410));
  EXPECT_EQ(trim(LegPoint::identity(4, 3)).dim(), 1u);
}

TEST(LegPermutation, ExactPermutationUnitary) {
  LegPermutation p{{2, 0, 3, 1}};
  ASSERT_TRUE(p.valid());
  SparseMatrix u = p.matrix();
  EXPECT_EQ(u.adjoint() * u, SparseMatrix::identity(16));
  EXPECT_EQ(p.inverse().matrix(), u.adjoint());
  EXPECT_FALSE((LegPermutation{{0, 0}}).valid());
  // bit at leg 0 moves to leg 2: e_{1000} -> e_{0010}
  EXPECT_EQ(u.at(2, 8), GaussianRational(1));
}

TEST(HalfFlip, ExactCommutationAndAbsorption) {
  for (std::size_t n = 1; n <= 3; ++n) {
    HalfFlip h = half_flip_supplier(n);
    HalfFlipReport r = certify_half_flip(h, first_copy_units(n), second_copy_units(n), 20);
    EXPECT_EQ(r.commutator, Dyadic(0)) << n;
    EXPECT_EQ(r.absorption, Dyadic(0)) << n;
    EXPECT_EQ(r.unitarity, Dyadic(0)) << n;
  }
  // w* (1 (x) y) w = (1_{2^n} (x) y) (x) 1 exactly
  HalfFlip h = half_flip_supplier(2);
  LegPoint y = LegPoint::unit(0, 2, 1, 3);
  LegPoint moved = h.w.adjoint() * y * h.w;
  LegPoint expect = lift(LegPoint(4, 0, kron(SparseMatrix::identity(4), SparseMatrix::unit(4, 1, 3))), 4, 2);
  EXPECT_EQ(moved, expect);
}

TEST(HalfFlip, ShallowFlipDisturbsFirstCopy) {
  // depth 0 exchanges the first legs of the two copies
  HalfFlip h = half_flip(0, 1);
  HalfFlipReport r = certify_half_flip(h, {LegPoint::unit(1, 0, 0, 1)}, {LegPoint::unit(0, 1, 0, 1)}, 20);
  EXPECT_GT(r.commutator, Dyadic::pow2(-1));
  EXPECT_EQ(r.absorption, Dyadic(0));
}
