#include "cstar/ast.hpp"
#include "cstar/coding.hpp"
#include "cstar/rational_matrix.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cstar;

namespace {

StarPoly random_poly(std::mt19937_64& rng, int max_terms = 4, int max_len = 3, int gens = 3) {
  std::uniform_int_distribution<int> nterms(0, max_terms), len(0, max_len), g(0, gens - 1), b(0, 1), num(-5, 5),
      den(1, 4);
  StarPoly p;
  int t = nterms(rng);
  for (int i = 0; i < t; ++i) {
    Word w;
    int l = len(rng);
    for (int j = 0; j < l; ++j) w.push_back({static_cast<std::uint64_t>(g(rng)), b(rng) == 1});
    p.add_term(w, GaussianRational(make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng))));
  }
  return p;
}

struct MatrixOps {
  std::size_t n;
  RationalMatrix identity() const { return RationalMatrix::identity(n); }
  RationalMatrix zero() const { return RationalMatrix(n); }
  RationalMatrix adjoint(const RationalMatrix& x) const { return x.adjoint(); }
  RationalMatrix mul(const RationalMatrix& x, const RationalMatrix& y) const { return x * y; }
  RationalMatrix add(const RationalMatrix& x, const RationalMatrix& y) const { return x + y; }
  RationalMatrix scale(const GaussianRational& c, const RationalMatrix& x) const { return c * x; }
};

}  // namespace

TEST(Pairing, SmallValues) {
  EXPECT_EQ(pair(Integer(0), Integer(0)), 0);
  EXPECT_EQ(pair(Integer(1), Integer(2)), 8);
  EXPECT_EQ(pair(Integer(2), Integer(1)), 7);
  EXPECT_EQ(pair64(1, 2), 8u);
}

TEST(Pairing, InverseOnGrid) {
  // a full 10^4 x 10^4 sweep through the 64-bit path, a sparser one through GMP
  for (std::uint64_t m = 0; m < 10000; ++m)
    for (std::uint64_t p = 0; p < 10000; ++p) {
      auto [a, b] = unpair64(pair64(m, p));
      ASSERT_EQ(a, m);
      ASSERT_EQ(b, p);
    }
  for (long m = 0; m < 10000; m += 97)
    for (long p = 0; p < 10000; p += 89) {
      auto [a, b] = unpair(pair(Integer(m), Integer(p)));
      ASSERT_EQ(a, m);
      ASSERT_EQ(b, p);
    }
}

TEST(Pairing, EnumeratesDiagonals) {
  std::uint64_t n = 0;
  for (std::uint64_t d = 0; d < 50; ++d)
    for (std::uint64_t p = 0; p <= d; ++p) EXPECT_EQ(pair64(d - p, p), n++);
}

TEST(Coding, UnitGolden) { EXPECT_EQ(encode_poly(StarPoly::unit()), 1375); }

TEST(Coding, ZeroIsZero) {
  EXPECT_EQ(encode_poly(StarPoly()), 0);
  EXPECT_TRUE(decode_poly(Integer(0)).is_zero());
}

TEST(Coding, RandomRoundtrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    StarPoly p = random_poly(rng);
    ASSERT_EQ(decode_poly(encode_poly(p)), p) << debug_string(p);
  }
}

TEST(Coding, DecodeIsTotalAndConsistent) {
  // every natural decodes; nonzero results re-encode to the same natural
  for (long c = 0; c < 200000; ++c) {
    StarPoly p = decode_poly(Integer(c));
    if (!p.is_zero()) ASSERT_EQ(encode_poly(p), c);
  }
}

TEST(Coding, BoundedHeightEnumeration) {
  // all scalar polynomials with coefficient in {+-1, +-i, 0} and the single
  // generators g0, g0* appear among the codes below the maximum of their codes
  std::vector<StarPoly> family = {StarPoly(), StarPoly::unit(), StarPoly::scalar(-1),
                                  StarPoly::scalar(GaussianRational::i_unit()), StarPoly::gen(0),
                                  StarPoly::gen(0, true)};
  Integer bound = 0;
  for (const auto& p : family) bound = std::max(bound, encode_poly(p));
  std::vector<bool> seen(family.size(), false);
  for (Integer c = 0; c <= bound; ++c) {
    StarPoly p = decode_poly(c);
    for (std::size_t i = 0; i < family.size(); ++i)
      if (p == family[i]) seen[i] = true;
  }
  for (std::size_t i = 0; i < family.size(); ++i) EXPECT_TRUE(seen[i]) << i;
}

TEST(StarPoly, StarAlgebraLaws) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    StarPoly p = random_poly(rng), q = random_poly(rng), r = random_poly(rng);
    EXPECT_EQ((p * q) * r, p * (q * r));
    EXPECT_EQ(p * (q + r), p * q + p * r);
    EXPECT_EQ((p * q).adjoint(), q.adjoint() * p.adjoint());
    EXPECT_EQ(p.adjoint().adjoint(), p);
    EXPECT_TRUE((p - p).is_zero());
  }
}

TEST(PolyApply, Examples) {
  MatrixOps ops{2};
  std::map<std::uint64_t, RationalMatrix> asg{{0, RationalMatrix::unit(2, 0, 1)}};
  AssignedBackend<MatrixOps, RationalMatrix> be{ops, asg};
  EXPECT_EQ(poly_apply(StarPoly::unit(), be), RationalMatrix::identity(2));
  StarPoly w = StarPoly::word({{0, true}, {0, false}});
  EXPECT_EQ(poly_apply(w, be), RationalMatrix::unit(2, 1, 1));

  MatrixOps one{1};
  std::map<std::uint64_t, RationalMatrix> asg1{{0, RationalMatrix::identity(1)}};
  AssignedBackend<MatrixOps, RationalMatrix> be1{one, asg1};
  GaussianRational half_i(0, make_rational(1, 2));
  EXPECT_EQ(poly_apply(half_i * StarPoly::gen(0), be1), RationalMatrix::scalar(1, half_i));
}

TEST(PolyApply, MissingGeneratorNamesIndex) {
  MatrixOps ops{2};
  std::map<std::uint64_t, RationalMatrix> asg;
  AssignedBackend<MatrixOps, RationalMatrix> be{ops, asg};
  try {
    poly_apply(StarPoly::gen(17), be);
    FAIL();
  } catch (const precondition_error& e) {
    EXPECT_NE(std::string(e.what()).find("17"), std::string::npos);
  }
}

TEST(Ast, RoundTrip) {
  std::string text = "(add (mul (gen 0) (adj (gen 2))) (scal -3/4 1/2 (gen 1)) (unit))";
  Expr e = parse_expr(text);
  EXPECT_EQ(parse_expr(print_expr(e)), e);
  StarPoly p = to_starpoly(e);
  EXPECT_EQ(to_starpoly(from_starpoly(p)), p);
  EXPECT_THROW(parse_expr("(gen"), parse_error);
  EXPECT_THROW(parse_expr("(frob 1)"), parse_error);
}

TEST(Ast, RandomPolynomialsRoundTrip) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    StarPoly p = random_poly(rng);
    ASSERT_EQ(to_starpoly(parse_expr(print_expr(from_starpoly(p)))), p);
  }
}
