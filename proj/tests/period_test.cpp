#include <torelli/period.hpp>

#include <gtest/gtest.h>

using namespace torelli;

namespace {

LatticePtr diag4() { return catalog::by_name("diag:1,1,1,-1"); }
FVector e(std::size_t n, std::size_t i) { return FVector::unit(n, i); }

IntMatrix reflection_matrix(const QuadLattice& l, const IntVector& delta) {
  // v -> v + q(v, delta) delta for q(delta) = -2.
  const IntVector gd = l.apply(delta);
  IntMatrix m = identity_matrix(l.rank());
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j) m[i][j] += delta[i] * gd[j];
  return m;
}

}  // namespace

TEST(MakePeriod, Examples) {
  auto l = diag4();
  EXPECT_NO_THROW(PeriodPoint::make(l, e(4, 0), e(4, 1)));
  try {
    PeriodPoint::make(l, e(4, 0), e(4, 3));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::NotPositive);
  }
  auto p = PeriodPoint::make(l, e(4, 0), e(4, 0) + e(4, 1));
  EXPECT_EQ(p.b(), e(4, 1));
  try {
    PeriodPoint::make(l, e(4, 0), Scalar(2) * e(4, 0));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::DependentSpan);
  }
}

TEST(MakePeriod, OrthogonalizedPlaneMatchesInputSpan) {
  auto l = catalog::by_name("3u");
  auto f = NumberField::quadratic(3);
  Rng rng(4);
  const auto& frame = l->positive_frame();
  for (int trial = 0; trial < 20; ++trial) {
    FVector a = FVector::from_integers(frame[0]) + Scalar(Rational(1, 32)) * rng.small_vector(f, 6, 2);
    FVector b = FVector::from_integers(frame[1]) + FVector::from_integers(frame[0]) +
                Scalar(Rational(1, 32)) * rng.small_vector(f, 6, 2);
    auto p = PeriodPoint::make(l, a, b);
    EXPECT_TRUE(l->form(p.a(), p.b()).is_zero());
    EXPECT_GT(detail::orientation_against(p, a, b), 0);
  }
}

TEST(SamePoint, Examples) {
  auto l = diag4();
  auto p = PeriodPoint::make(l, e(4, 0), e(4, 1));
  EXPECT_TRUE(same_point(p, p));
  EXPECT_FALSE(same_point(p, p.conjugate()));
  EXPECT_TRUE(same_plane(p, p.conjugate()));
  EXPECT_TRUE(same_point(p, PeriodPoint::make(l, Scalar(2) * e(4, 0), Scalar(3) * e(4, 1))));
  EXPECT_TRUE(same_point(p, p.conjugate().conjugate()));
  EXPECT_FALSE(same_point(p, PeriodPoint::make(l, e(4, 0), e(4, 2))));
}

TEST(PicardLattice, DiagonalExample) {
  auto p = PeriodPoint::make(diag4(), e(4, 0), e(4, 1));
  auto pic = picard_lattice(p);
  EXPECT_EQ(pic.basis(), (IntMatrix{{0, 0, 1, 0}, {0, 0, 0, 1}}));
  EXPECT_FALSE(is_generic_period(p));
}

TEST(PicardLattice, RationalK3PeriodHasRankTwenty) {
  auto k3 = catalog::k3();
  const auto& fr = k3->positive_frame();
  auto p = PeriodPoint::make(k3, FVector::from_integers(fr[0]), FVector::from_integers(fr[1]) + FVector::from_integers(fr[2]));
  auto pic = picard_lattice(p);
  EXPECT_EQ(pic.rank(), 20u);
  for (const auto& v : pic.basis()) {
    EXPECT_TRUE(k3->form(v, p.a()).is_zero());
    EXPECT_TRUE(k3->form(v, p.b()).is_zero());
  }
}

TEST(PicardLattice, FieldDegreeCounting) {
  // Two constraints over a degree-8 field give at most 16 rational equations
  // on 22 unknowns, so the Picard rank stays >= 6; degree 11 reaches 0.
  auto k3 = catalog::k3();
  auto p8 = random_generic_period(catalog::by_name("3u"), NumberField::pure_root(8, 2), 1).point;
  (void)p8;
  const auto& fr = k3->positive_frame();
  auto f8 = NumberField::pure_root(8, 2);
  Rng rng(2);
  FVector a = FVector::from_integers(fr[0]) + Scalar(Rational(1, 64)) * rng.small_vector(f8, 22, 1);
  FVector b = FVector::from_integers(fr[1]) + Scalar(Rational(1, 64)) * rng.small_vector(f8, 22, 1);
  auto p = PeriodPoint::make(k3, a, b);
  EXPECT_EQ(picard_lattice(p).rank(), 6u);

  auto generic = random_generic_period(k3, NumberField::pure_root(11, 2), 1);
  EXPECT_EQ(picard_lattice(generic.point).rank(), 0u);
  EXPECT_TRUE(is_generic_period(generic.point));
}

TEST(RandomGenericPeriod, Examples) {
  auto uu = catalog::by_name("diag:1,1,-1,-1");
  auto h = catalog::u();
  auto u2 = direct_sum({h, h});
  auto r = random_generic_period(u2, NumberField::quadratic(2), 7);
  EXPECT_TRUE(is_generic_period(r.point));
  EXPECT_GE(r.attempts, 1);
  try {
    random_generic_period(catalog::k3(), NumberField::rationals(), 1, 5);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::BudgetExhausted);
  }
  // Deterministic in the seed.
  auto r2 = random_generic_period(u2, NumberField::quadratic(2), 7);
  EXPECT_EQ(r.point.a(), r2.point.a());
  EXPECT_EQ(r.point.b(), r2.point.b());
  (void)uu;
}

TEST(IsGenericPeriod, PositiveDefiniteRankThree) {
  auto l = catalog::by_name("diag:1,1,1");
  EXPECT_FALSE(is_generic_period(PeriodPoint::make(l, e(3, 0), e(3, 1))));
  EXPECT_EQ(picard_lattice(PeriodPoint::make(l, e(3, 0), e(3, 1))).rank(), 1u);
  auto r = random_generic_period(l, NumberField::quadratic(2), 3);
  EXPECT_TRUE(is_generic_period(r.point));
}

TEST(Act, IdentityNegationAndReflection) {
  auto k3 = catalog::k3();
  auto p = random_generic_period(k3, NumberField::pure_root(11, 2), 4).point;
  EXPECT_TRUE(same_point(act(LatticeIsometry::identity(k3), p), p));
  // -(a + ib) = (-a) + i(-b): the ordered pair (-a, -b) has determinant +1.
  EXPECT_TRUE(same_point(act(LatticeIsometry::negation(k3), p), p));

  auto l = diag4();
  auto q = PeriodPoint::make(l, e(4, 0), e(4, 1));
  auto m = catalog::by_name("diag:1,1,-1,-1");
  auto q2 = PeriodPoint::make(m, e(4, 0), e(4, 1));
  LatticeIsometry s(m, reflection_matrix(*m, {0, 0, 1, 1}));  // q(e3+e4) = -2, orthogonal to e1, e2
  EXPECT_TRUE(same_point(act(s, q2), q2));
  (void)q;
}

TEST(Act, PreservesPicardRank) {
  auto k3 = catalog::k3();
  const auto& fr = k3->positive_frame();
  auto p = PeriodPoint::make(k3, FVector::from_integers(fr[0]), FVector::from_integers(fr[1]));
  // Reflections in E8 simple roots and in e - f of the last U.
  for (std::size_t i : {0u, 3u, 9u, 21u}) {
    IntVector delta(22, 0);
    if (i == 21) {
      delta[20] = 1;
      delta[21] = -1;
    } else {
      delta[i] = 1;
    }
    ASSERT_EQ(k3->norm(delta), -2);
    LatticeIsometry s(k3, reflection_matrix(*k3, delta));
    auto q = act(s, p);
    EXPECT_EQ(picard_lattice(q).rank(), picard_lattice(p).rank());
  }
}

TEST(PositiveCone, Membership) {
  auto l = catalog::by_name("diag:1,1,1,-1,-1");
  auto p = PeriodPoint::make(l, e(5, 0), e(5, 1));
  auto c = PositiveConeRef::create(p, e(5, 2));
  EXPECT_TRUE(in_positive_cone(e(5, 2), c));
  EXPECT_FALSE(in_positive_cone(-e(5, 2), c));
  EXPECT_FALSE(in_positive_cone(e(5, 3), c));
  EXPECT_TRUE(in_positive_cone(Scalar(2) * e(5, 2) + e(5, 3), c));
  EXPECT_THROW(in_positive_cone(e(5, 0), c), Error);
  EXPECT_THROW(PositiveConeRef::create(p, e(5, 3)), Error);
  EXPECT_THROW(PositiveConeRef::create(p, e(5, 0)), Error);
}
