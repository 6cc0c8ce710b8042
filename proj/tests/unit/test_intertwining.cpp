#include "cstar/intertwining.hpp"

#include <gtest/gtest.h>

using namespace cstar;

namespace {

using UhfEngine = IntertwiningEngine<UhfLegBackend>;
using MatEngine = IntertwiningEngine<MatrixTensorBackend>;

const UhfEngine& uhf_three() {
  static UhfEngine e = [] {
    UhfEngine x{UhfLegBackend()};
    x.run(3);
    return x;
  }();
  return e;
}

}  // namespace

TEST(Schedule, FirstStages) {
  ScheduleEntry s = make_schedule(1, Rational(1));
  EXPECT_EQ(s.eta, make_rational(1, 8));
  EXPECT_EQ(s.eps, make_rational(1, 16));
  EXPECT_EQ(s.k, 5);
  EXPECT_EQ(s.conj_slack, Rational(0));
  ScheduleEntry t = make_schedule(2, Rational(1));
  EXPECT_EQ(t.eta, make_rational(1, 16));
  EXPECT_EQ(t.eps, make_rational(1, 32));
  EXPECT_EQ(t.k, 2 + 3 + 0 + 2);
  // (1 + 2^-7) - 1 = 2^-7, slack 2^-7 (2 + 2^-7)
  EXPECT_EQ(t.conj_slack, pow2(-7) * (2 + pow2(-7)));
}

TEST(Schedule, LargeBoundsAndMonotone) {
  ScheduleEntry s = make_schedule(3, Rational(5));
  EXPECT_EQ(s.eps, pow2(-6) / 5);
  EXPECT_EQ(s.k, 3 + 3 + 3 + 2);
  Rational prev_eta = 1;
  for (std::size_t n = 1; n <= 12; ++n) {
    ScheduleEntry e = make_schedule(n, Rational(3));
    EXPECT_LT(e.eta, prev_eta);
    EXPECT_LE((2 * e.eps + e.conj_slack) * e.bound + e.eta, pow2(-static_cast<long>(n)));
    prev_eta = e.eta;
  }
  EXPECT_THROW(make_schedule(0, Rational(1)), precondition_error);
}

TEST(Engine, DegenerateScalars) {
  MatEngine e{MatrixTensorBackend(1, 1)};
  e.run(3);
  for (const auto& s : e.stages()) {
    EXPECT_TRUE(s.exact_unitary);
    EXPECT_TRUE(s.v.is_identity());
    EXPECT_EQ(s.max_margin(), Dyadic(0));
    EXPECT_EQ(s.source, "supplier");
  }
  auto r = e.psi_approx(RationalMatrix::identity(1), 5);
  EXPECT_TRUE(r.point.is_identity());
  EXPECT_EQ(r.error, Rational(0));
}

TEST(Engine, SabotageExhaustsBudget) {
  // b_1 = 1 (x) e_00 is a rank-one projection in M_2 and no conjugate of it is scalar
  MatrixTensorBackend be(1, 2, {}, {RationalMatrix::unit(2, 0, 0)});
  EngineOptions opt;
  opt.budget = 40;
  MatEngine e(be, opt);
  try {
    e.step();
    FAIL() << "stage 1 should not be found";
  } catch (const stage_budget_error& err) {
    ASSERT_FALSE(err.best_margins.empty());
    Dyadic worst(0);
    for (const auto& m : err.best_margins) worst = max(worst, m);
    EXPECT_GE(worst, Dyadic::pow2(-1));
  }
}

TEST(Engine, UhfHalfFlipStagesAreExact) {
  const auto& e = uhf_three();
  ASSERT_EQ(e.stages().size(), 3u);
  for (const auto& s : e.stages()) {
    EXPECT_TRUE(s.exact_unitary);
    EXPECT_EQ(s.max_margin(), Dyadic(0));
    EXPECT_EQ(s.source, "supplier");
    EXPECT_EQ(s.pullbacks.size(), s.schedule.n);
    EXPECT_LE(s.derived_bound, pow2(-static_cast<long>(s.schedule.n)));
    for (const auto& a : s.pullbacks) EXPECT_EQ(trim(a).right, 0u);
  }
}

TEST(Engine, UhfEnumerations) {
  UhfLegBackend be;
  EXPECT_EQ(be.a_point(1), LegPoint::unit(1, 0, 0, 0));
  EXPECT_EQ(be.a_point(4), LegPoint::unit(1, 0, 1, 1));
  EXPECT_EQ(be.a_point(5), LegPoint::unit(2, 0, 0, 0));
  EXPECT_EQ(be.b_point(2), LegPoint::unit(0, 1, 0, 0));
  for (std::size_t j = 1; j <= 24; ++j) EXPECT_EQ(be.index_of(be.a_point(j)), j);
  EXPECT_TRUE(be.is_unit(LegPoint::identity(2, 0)));
  EXPECT_FALSE(be.index_of(LegPoint::identity(1, 0)).has_value());
}

TEST(Engine, PsiOfUnitIsUnit) {
  const auto& e = uhf_three();
  auto r = e.psi_approx(LegPoint::identity(), 2);
  EXPECT_EQ(r.point, LegPoint::identity());
  EXPECT_EQ(r.error, Rational(0));
}

TEST(Engine, PsiApproxWithinBound) {
  const auto& e = uhf_three();
  LegPoint a = e.backend().a_point(2);
  auto r = e.psi_approx(a, 2);
  EXPECT_LT(r.error, pow2(-2));
  EXPECT_EQ(r.stages_used, 3u);
  EXPECT_THROW(e.psi_approx(a, 3), precondition_error);
  // psi(a) is a first-copy point up to the certified error
  EXPECT_LE(Rational(distance_to_first_copy(r.point, 20).hi().to_rational()), 2 * r.error);
}

TEST(Engine, CauchyDifferences) {
  const auto& e = uhf_three();
  for (std::size_t j = 1; j <= 3; ++j) {
    LegPoint a = e.backend().a_point(j);
    for (std::size_t n = std::max<std::size_t>(1, j - 1); n < 3; ++n)
      EXPECT_LT(e.cauchy_difference(a, n, 30), Dyadic::pow2(-static_cast<long>(n) - 1)) << j << " " << n;
  }
}

TEST(Engine, VerifyCauMonotone) {
  const auto& e = uhf_three();
  LegPoint a = e.backend().a_point(1);
  auto r1 = e.verify_cau(a, 1);
  auto r2 = e.verify_cau(a, 2);
  EXPECT_LE(r1.n, r2.n);
  EXPECT_LE(r2.n, 3u);
  EXPECT_LT(r2.bound, pow2(-2));
  EXPECT_THROW(e.verify_cau(a, 40), precondition_error);
}

TEST(Engine, ApproximateMorphism) {
  // psi is a *-homomorphism: psi(a1) psi(a2) - psi(a1 a2) is within the summed errors
  const auto& e = uhf_three();
  const auto& be = e.backend();
  LegPoint x = be.a_point(2), y = be.a_point(3);  // e_01, e_10
  LegPoint xy = x * y;                              // e_00 = a_1
  ASSERT_EQ(xy, be.a_point(1));
  auto px = e.psi_approx(x, 2), py = e.psi_approx(y, 2), pxy = e.psi_approx(xy, 2);
  LegPoint d = px.point * py.point - pxy.point;
  Rational bound = px.error * (1 + py.error) + py.error + pxy.error;
  EXPECT_LE(Rational(norm(d, 20).hi().to_rational()), bound);
  LegPoint s = px.point.adjoint() - py.point;
  EXPECT_LE(Rational(norm(s, 20).hi().to_rational()), px.error + py.error);
}

TEST(Engine, Deterministic) {
  UhfEngine a{UhfLegBackend()}, b{UhfLegBackend()};
  a.run(2);
  b.run(2);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(a.stages()[i].v_code, b.stages()[i].v_code);
    EXPECT_EQ(a.stages()[i].a_codes, b.stages()[i].a_codes);
    EXPECT_EQ(a.stages()[i].v_code, uhf_three().stages()[i].v_code);
  }
}

TEST(Engine, FourStagesReachPrecisionThree) {
  UhfEngine e{UhfLegBackend()};
  e.run(4);
  EXPECT_EQ(e.stages().back().max_margin(), Dyadic(0));
  LegPoint a = e.backend().a_point(1);
  auto r = e.psi_approx(a, 3);
  EXPECT_LT(r.error, pow2(-3));
  auto c = e.verify_cau(a, 3);
  EXPECT_LE(c.n, 4u);
  EXPECT_LT(c.bound, pow2(-3));
}
