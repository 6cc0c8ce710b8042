#include "cstar/matrix_ops.hpp"
#include "gen.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace cstar;

namespace {

Dyadic width_of(const DyadicInterval& iv) { return iv.width(); }

bool overlap_sq(const DyadicInterval& sq_of, const DyadicInterval& direct) {
  return sqr(sq_of).overlaps(direct);
}

}  // namespace

TEST(MatrixNorm, MatrixUnit) {
  auto iv = matrix_norm(RationalMatrix::unit(3, 0, 0), 20);
  EXPECT_TRUE(iv.contains(Rational(1)));
  EXPECT_LE(width_of(iv), Dyadic::pow2(-20));
}

TEST(MatrixNorm, ScaledShift) {
  RationalMatrix m(2);
  m(0, 1) = 2;
  auto iv = matrix_norm(m, 30);
  EXPECT_TRUE(iv.contains(Rational(2)));
  EXPECT_LE(width_of(iv), Dyadic::pow2(-30));
}

TEST(MatrixNorm, ZeroMatrix) {
  auto iv = matrix_norm(RationalMatrix(4), 10);
  EXPECT_TRUE(iv.contains(Rational(0)));
}

TEST(MatrixNorm, RandomAgainstOracle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    RationalMatrix m = gen::random_matrix(rng, 8);
    auto iv = matrix_norm(m, 40);
    EXPECT_TRUE(oracle::contains(iv, oracle::spectral_norm(m))) << trial;
    EXPECT_LE(width_of(iv), Dyadic::pow2(-40));
  }
}

TEST(MatrixNorm, RepeatedTopSingularValue) {
  // unitary: all singular values equal
  std::mt19937_64 rng(5);
  RationalMatrix u = gen::random_unitary(rng, 6, 6);
  auto iv = matrix_norm(u, 40);
  EXPECT_TRUE(iv.contains(Rational(1)));
  EXPECT_LE(width_of(iv), Dyadic::pow2(-40));
}

TEST(MatrixNorm, CStarIdentity) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 8; ++trial) {
    RationalMatrix m = gen::random_matrix(rng, 5);
    for (long k : {10L, 30L, 50L}) EXPECT_TRUE(overlap_sq(matrix_norm(m, k), matrix_norm(m.adjoint() * m, k)));
  }
}

TEST(MatrixNorm, UnitaryInvariance) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 8; ++trial) {
    RationalMatrix m = gen::random_matrix(rng, 4);
    RationalMatrix u = gen::random_unitary(rng, 4), v = gen::random_unitary(rng, 4);
    EXPECT_TRUE(matrix_norm(u * m * v, 30).overlaps(matrix_norm(m, 30)));
  }
}

TEST(MatrixNorm, MonotoneRefinement) {
  std::mt19937_64 rng(17);
  RationalMatrix m = gen::random_matrix(rng, 6);
  auto coarse = matrix_norm(m, 8);
  auto fine = matrix_norm(m, 40);
  EXPECT_TRUE(inflate(coarse, Dyadic::pow2(-8)).contains(fine));
}

TEST(MatrixNorm, IntervalInput) {
  std::mt19937_64 rng(19);
  RationalMatrix m = gen::random_matrix(rng, 4);
  IntervalMatrix im = inflate(IntervalMatrix(m), Dyadic::pow2(-30));
  auto iv = matrix_norm(im, 20);
  EXPECT_TRUE(oracle::contains(iv, oracle::spectral_norm(m)));
  EXPECT_LE(width_of(iv), Dyadic::pow2(-18));
}

TEST(MatrixExp, ZeroIsIdentity) {
  IntervalMatrix e = matrix_exp(IntervalMatrix(3), 30);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_TRUE(e(i, j).re.is_point());
      EXPECT_TRUE(e(i, j).im.is_point());
    }
  EXPECT_TRUE(e.contains(RationalMatrix::identity(3)));
}

TEST(MatrixExp, DiagonalPi) {
  IntervalMatrix h(2);
  h(0, 0) = ComplexInterval(DyadicInterval(0), DyadicInterval::pi());
  IntervalMatrix e = matrix_exp(h, 40);
  RationalMatrix expect(2);
  expect(0, 0) = -1;
  expect(1, 1) = 1;
  EXPECT_TRUE(e.contains(expect));
  EXPECT_LE(e.max_entry_width(), Dyadic::pow2(-35));
}

TEST(MatrixExp, GroupInverse) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    RationalMatrix s = gen::random_hermitian(rng, 4);
    IntervalMatrix ih = ComplexInterval(DyadicInterval(0), DyadicInterval(1)) * IntervalMatrix(s);
    IntervalMatrix mih = ComplexInterval(DyadicInterval(0), DyadicInterval(-1)) * IntervalMatrix(s);
    IntervalMatrix p = matrix_exp(ih, 40) * matrix_exp(mih, 40);
    EXPECT_TRUE(p.contains(RationalMatrix::identity(4)));
    // unitarity within the enclosure width
    IntervalMatrix e = matrix_exp(ih, 40);
    Dyadic defect = (e.adjoint() * e - IntervalMatrix::identity(4)).frobenius_upper();
    EXPECT_LT(defect, Dyadic::pow2(-30));
  }
}

TEST(SchurLog, Identity) {
  auto r = schur_log(RationalMatrix::identity(3), 30);
  EXPECT_TRUE(r.h.contains(RationalMatrix(3)));
  EXPECT_LT(r.exp_error, Dyadic::pow2(-30));
}

TEST(SchurLog, MinusOne) {
  RationalMatrix u(1);
  u(0, 0) = -1;
  auto r = schur_log(u, 30);
  DyadicInterval pi = DyadicInterval::pi();
  EXPECT_TRUE(r.h(0, 0).re.overlaps(pi));
  EXPECT_LT(r.exp_error, Dyadic::pow2(-30));
  EXPECT_LT(r.theta, 0);
  EXPECT_GT(r.theta, -1);
}

TEST(SchurLog, DiagonalOneI) {
  RationalMatrix u(2);
  u(0, 0) = 1;
  u(1, 1) = GaussianRational::i_unit();
  auto r = schur_log(u, 30);
  EXPECT_TRUE(r.h(0, 0).re.contains(Rational(0)));
  EXPECT_TRUE(r.h(1, 1).re.overlaps(mul_2exp(DyadicInterval::pi(), -1)));
  EXPECT_LT(r.exp_error, Dyadic::pow2(-30));
}

TEST(SchurLog, RandomUnitariesBranchAndHermitian) {
  std::mt19937_64 rng(29);
  DyadicInterval two_pi = mul_2exp(DyadicInterval::pi(), 1);
  for (int trial = 0; trial < 6; ++trial) {
    RationalMatrix u = gen::random_unitary(rng, 5, 6);
    auto r = schur_log(u, 30);
    EXPECT_LT(r.exp_error, Dyadic::pow2(-30));
    DyadicInterval th = DyadicInterval::from_rational(r.theta);
    for (const auto& ev : r.eigenvalues) {
      EXPECT_TRUE(th.hi() <= ev.lo());
      EXPECT_TRUE(ev.hi() < (th + two_pi).lo());
    }
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        EXPECT_EQ(r.h(i, j).re.lo(), r.h(j, i).re.lo());
        EXPECT_EQ(r.h(i, j).im.lo(), (-r.h(j, i).im).lo());
      }
  }
}

TEST(SchurLog, RejectsNonUnitary) {
  RationalMatrix a = RationalMatrix::identity(2);
  a(0, 1) = make_rational(1, 3);
  EXPECT_THROW(schur_log(a, 20), precondition_error);
}

TEST(RowColumn, ProductExample) {
  RationalMatrix a = kron(RationalMatrix::unit(2, 0, 0), RationalMatrix::unit(2, 0, 0));
  auto blocks = block_entries(a, 2, 2);
  Rational c = Rational(1) - pow2(-10);
  std::vector<RationalMatrix> x(2, RationalMatrix(2));
  x[0] = RationalMatrix::scalar(2, c) * RationalMatrix::unit(2, 0, 0);
  Dyadic lb = row_column_lower_bound(blocks, x, x);
  EXPECT_GE(lb.to_rational(), c * c - pow2(-30));
  EXPECT_LE(lb, Dyadic(1));
}

TEST(RowColumn, ZeroElement) {
  auto blocks = block_entries(RationalMatrix(4), 2, 2);
  std::vector<RationalMatrix> x(2, RationalMatrix::scalar(2, make_rational(1, 2)));
  EXPECT_EQ(row_column_lower_bound(blocks, x, x), Dyadic(0));
}

TEST(RowColumn, ConstraintViolation) {
  auto blocks = block_entries(RationalMatrix::identity(4), 2, 2);
  std::vector<RationalMatrix> x(2, RationalMatrix::identity(2));
  EXPECT_THROW(row_column_lower_bound(blocks, x, x), precondition_error);
}

TEST(RowColumn, SoundAndTightOnRandom) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    RationalMatrix a = gen::random_matrix(rng, 4, 3, 3);
    auto blocks = block_entries(a, 2, 2);
    EXPECT_EQ(from_block_entries(blocks), a);
    auto w = row_column_witness(blocks);
    Dyadic lb = row_column_lower_bound(blocks, w.x, w.y);
    auto nrm = matrix_norm(a, 30);
    EXPECT_LE(lb, nrm.hi());
    // the singular-pair witness is within the scale factor of the norm
    EXPECT_GE(lb.to_double(), nrm.lo().to_double() * 0.99);
  }
}

TEST(PartialTrace, Examples) {
  std::mt19937_64 rng(37);
  RationalMatrix x = gen::random_matrix(rng, 2), y = gen::random_matrix(rng, 3);
  EXPECT_EQ(partial_trace_expectation(kron(x, RationalMatrix::identity(3)), 2, 3, 1), x);
  EXPECT_EQ(partial_trace_expectation(kron(RationalMatrix::identity(2), y), 2, 3, 1),
            RationalMatrix::scalar(2, y.trace() / GaussianRational(3)));
  EXPECT_EQ(partial_trace_expectation(kron(x, y), 2, 3, 2), RationalMatrix::scalar(3, x.trace() / GaussianRational(2)) * y);
}

TEST(PartialTrace, DistanceZeroExactlyOnSubalgebra) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    RationalMatrix x = gen::random_matrix(rng, 2);
    auto d_in = distance_to_factor(kron(x, RationalMatrix::identity(3)), 2, 3, 1, 20);
    EXPECT_TRUE(d_in.contains(Rational(0)));
    RationalMatrix b = kron(x, RationalMatrix::identity(3)) + kron(RationalMatrix::identity(2), gen::random_matrix(rng, 3));
    RationalMatrix e = partial_trace_expectation(b, 2, 3, 1);
    bool member = b == kron(e, RationalMatrix::identity(3));
    auto d = distance_to_factor(b, 2, 3, 1, 20);
    EXPECT_EQ(member, d.contains(Rational(0)));
  }
}
