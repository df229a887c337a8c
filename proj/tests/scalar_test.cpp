#include <torelli/scalar.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace torelli;

namespace {

FieldPtr sqrt2() { return NumberField::quadratic(2); }

Scalar poly_elem(const FieldPtr& f, std::vector<long> c) {
  poly::Poly p;
  for (long x : c) p.emplace_back(x);
  return Scalar(f, p);
}

Scalar random_elem(const FieldPtr& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  poly::Poly p;
  for (int k = 0; k < f->degree(); ++k) p.push_back(canonical(Rational(num(rng), den(rng))));
  return Scalar(f, p);
}

}  // namespace

TEST(SignAtRoot, SqrtTwoExamples) {
  auto f = sqrt2();
  EXPECT_EQ(poly_elem(f, {-1, 1}).sign(), 1);   // sqrt2 - 1
  EXPECT_EQ(Scalar(f).sign(), 0);
  EXPECT_EQ(poly_elem(f, {-3, 0, 1}).sign(), -1);  // t^2 - 3 reduces to -1
  EXPECT_EQ(poly_elem(f, {-3, 0, 1}), Scalar(-1).lift(f));
}

TEST(Compare, SqrtTwoExamples) {
  auto f = sqrt2();
  Scalar t = Scalar::generator(f);
  EXPECT_EQ(compare(t, Scalar(Rational(3, 2))), -1);
  EXPECT_EQ(compare(t, t), 0);
  EXPECT_EQ(compare(t + Scalar(1), t), 1);
}

TEST(Compare, MixedFieldsRejected) {
  Scalar a = Scalar::generator(NumberField::quadratic(2));
  Scalar b = Scalar::generator(NumberField::quadratic(3));
  EXPECT_THROW(compare(a, b), Error);
  EXPECT_THROW(a + b, Error);
}

TEST(NumberField, CloseSignsResolveExactly) {
  // 1393/985 < sqrt2 < 99/70, continued-fraction convergents.
  auto f = sqrt2();
  Scalar t = Scalar::generator(f);
  EXPECT_EQ(compare(t, Scalar(Rational(99, 70))), -1);
  EXPECT_EQ(compare(t, Scalar(Rational(1393, 985))), 1);
  // (t - 665857/470832) is about -1.6e-12.
  EXPECT_EQ((t - Scalar(Rational(665857, 470832))).sign(), -1);
}

TEST(NumberField, IrreducibilityChecks) {
  EXPECT_THROW(NumberField::create({-4, 0, 1}, 1, 3), Error);           // (t-2)(t+2)
  EXPECT_THROW(NumberField::create({4, 0, 0, 0, 1}, 0, 1), Error);      // (t^2+2t+2)(t^2-2t+2)
  EXPECT_THROW(NumberField::create({6, 0, -5, 0, 1}, 1, Rational(3, 2)), Error);  // (t^2-2)(t^2-3)
  EXPECT_NO_THROW(NumberField::create({1, 0, -10, 0, 1}, 3, 4));        // sqrt2 + sqrt3 ~ 3.146
  EXPECT_THROW(NumberField::create({-1, -1, 0, 0, 0, 1}, 1, 2), Error);  // t^5 - t - 1: not Eisenstein
  EXPECT_NO_THROW(NumberField::pure_root(8, 2));
  EXPECT_NO_THROW(NumberField::pure_root(11, 2));
  try {
    NumberField::create({-4, 0, 1}, 1, 3);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotIrreducible);
  }
}

TEST(NumberField, IsolationChecks) {
  EXPECT_THROW(NumberField::create({-2, 0, 1}, -2, 2), Error);  // both roots
  EXPECT_THROW(NumberField::create({-2, 0, 1}, 2, 3), Error);   // no root
  EXPECT_THROW(NumberField::create({-2, 0, 1}, 2, 1), Error);   // empty
  auto neg = NumberField::create({-2, 0, 1}, -2, -1);           // -sqrt2
  EXPECT_EQ(Scalar::generator(neg).sign(), -1);
}

TEST(NumberField, TabulatedFields) {
  for (unsigned m : {5u, 7u, 8u, 9u, 12u, 15u, 16u}) {
    auto f = NumberField::real_cyclotomic(m);
    EXPECT_NEAR(f->approx_root(), 2 * std::cos(2 * M_PI / m), 1e-12) << m;
  }
}

TEST(Scalar, InverseAndFieldAxioms) {
  std::mt19937_64 rng(11);
  for (auto f : {sqrt2(), NumberField::real_cyclotomic(7), NumberField::pure_root(5, 3),
                 NumberField::rationals()}) {
    for (int trial = 0; trial < 40; ++trial) {
      Scalar a = random_elem(f, rng), b = random_elem(f, rng), c = random_elem(f, rng);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      if (!a.is_zero()) {
        EXPECT_EQ(a * a.inverse(), Scalar(1).lift(f));
        EXPECT_EQ((b / a) * a, b);
      }
      // Sign compatibility with arithmetic.
      EXPECT_EQ((a * b).sign(), a.sign() * b.sign());
      if (a.sign() == b.sign()) {
        EXPECT_EQ((a + b).sign(), a.sign());
      }
      // Sign agrees with floating evaluation when far from zero.
      const double v = a.approx();
      if (std::abs(v) > 1e-6) {
        EXPECT_EQ(a.sign(), v > 0 ? 1 : -1);
      }
    }
  }
}

TEST(Scalar, SignIndependentOfIsolationInterval) {
  auto wide = NumberField::create({-2, 0, 0, 1}, 1, 2);
  auto narrow = NumberField::create({-2, 0, 0, 1}, Rational(125, 100), Rational(127, 100));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Scalar a = random_elem(wide, rng);
    Scalar b(narrow, a.coefficients());
    EXPECT_EQ(a.sign(), b.sign());
  }
}

TEST(Scalar, RationalEmbedsInEveryField) {
  auto f = sqrt2();
  Scalar t = Scalar::generator(f);
  Scalar r(Rational(1, 3));
  EXPECT_EQ((t + r) - t, r.lift(f));
  EXPECT_TRUE(((t * r) / t).is_rational());
}

TEST(FVector, MaxNormAndExpansion) {
  auto f = sqrt2();
  Scalar t = Scalar::generator(f);
  FVector v(f, {Scalar(1), -t, Scalar(Rational(1, 2))});
  EXPECT_EQ(v.max_norm(), t);
  auto rows = v.expansion();
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (RatVector{1, 0, Rational(1, 2)}));
  EXPECT_EQ(rows[1], (RatVector{0, -1, 0}));
}
