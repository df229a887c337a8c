#include <torelli/torelli.hpp>

#include <gtest/gtest.h>

using namespace torelli;
using io::Json;

TEST(JsonIo, Rationals) {
  EXPECT_EQ(io::to_json(Rational(-3, 6)), "-1/2");
  EXPECT_EQ(io::rational_from_json(Json("6/4")), Rational(3, 2));
  EXPECT_EQ(io::rational_from_json(Json(7)), Rational(7));
  EXPECT_THROW(io::rational_from_json(Json("1/0")), Error);
  EXPECT_THROW(io::rational_from_json(Json("x")), Error);
  EXPECT_THROW(io::rational_from_json(Json(0.5)), Error);
}

TEST(JsonIo, FieldsAndScalars) {
  auto f = io::field_from_name("root:3:2");
  auto g = io::field_from_json(io::to_json(f));
  EXPECT_TRUE(same_field(f, g));
  const Scalar s(f, poly::Poly{Rational(1, 3), 0, Rational(-2)});
  EXPECT_EQ(io::scalar_from_json(g, io::to_json(s)), s.lift(g));
  EXPECT_TRUE(io::field_from_name("rational")->is_rational());
  EXPECT_EQ(io::field_from_name("cyclo:7")->degree(), 3);
  EXPECT_THROW(io::field_from_name("sqrt:4"), Error);
  EXPECT_THROW(io::field_from_name("quartic"), Error);
}

TEST(JsonIo, LineKeepsWitness) {
  auto l = catalog::by_name("3u");
  auto t = make_line(l, FVector::from_integers({1, 1, 0, 0, 0, 0}), FVector::from_integers({0, 0, 1, 1, 0, 0}),
                     FVector::from_integers({0, 0, 0, 0, 1, 1}));
  auto g = genericize(t, NumberField::quadratic(2), 3, 50).line;
  auto back = io::line_from_json(l, Json::parse(io::to_json(g).dump()));
  ASSERT_TRUE(back.is_generic());
  EXPECT_EQ(std::get<GenericWitness>(back.genericity()).kernel.left_inverse,
            std::get<GenericWitness>(g.genericity()).kernel.left_inverse);
  auto ng = io::line_from_json(l, io::to_json(check_generic(t)));
  EXPECT_TRUE(std::holds_alternative<NonGenericWitness>(ng.genericity()));
}

TEST(JsonIo, ChainRoundTripVerifies) {
  auto l = catalog::by_name("3u");
  auto f = NumberField::quadratic(2);
  Rng rng(12);
  const auto& fr = l->positive_frame();
  auto x = PeriodPoint::make(l, FVector::from_integers(fr[0]) + Scalar(Rational(1, 8)) * rng.small_vector(f, 6, 1),
                             FVector::from_integers(fr[1]) + Scalar(Rational(1, 8)) * rng.small_vector(f, 6, 1));
  auto y = PeriodPoint::make(l, x.a() + Scalar(Rational(1, 50)) * rng.small_vector(f, 6, 1), x.b());
  auto c = connect_strong_in_ball(x, y, Ball{x.pair(), Rational(1, 4)}, f, 1);
  const std::string text = io::to_json(c).dump();
  auto back = io::chain_from_json(Json::parse(text));
  EXPECT_TRUE(verify_chain(back, x, y).ok());
  EXPECT_EQ(io::to_json(back).dump(), text);

  Json bumped = Json::parse(text);
  bumped["v"] = 2;
  try {
    io::chain_from_json(bumped);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedVersion);
  }
  bumped.erase("v");
  EXPECT_THROW(io::chain_from_json(bumped), Error);
}

TEST(JsonIo, ReflectionWordChecksProduct) {
  auto u = catalog::u();
  ReflectionWord w(u);
  w.push_back(Root::make(u, {1, -1}));
  Json j = io::to_json(w);
  EXPECT_EQ(io::word_from_json(u, j).matrix(), w.matrix());
  j["matrix"][0][0] = 5;
  EXPECT_THROW(io::word_from_json(u, j), Error);
}
