#include <doctest.h>

#include <random>

#include "wres/scalar.hpp"

using namespace wres;

namespace {

ScalarPoly random_poly(std::mt19937& rng) {
  std::vector<ScalarPoly::Term> terms;
  const int count = static_cast<int>(rng() % 4);
  for (int t = 0; t < count; ++t) {
    Degree d{static_cast<std::uint16_t>(rng() % 3), static_cast<std::uint16_t>(rng() % 3)};
    GaussianRational c(make_rational(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 3) + 1),
                       make_rational(static_cast<long>(rng() % 5) - 2, 1));
    terms.emplace_back(d, c);
  }
  return ScalarPoly::from_terms(std::move(terms));
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-2/4") == Rational(-1, 2));
  CHECK(parse_rational(" 7/3 ") == Rational(7, 3));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
}

TEST_CASE("gaussian arithmetic") {
  GaussianRational i = GaussianRational::i();
  CHECK(i * i == GaussianRational(-1));
  GaussianRational z(Rational(1, 2), Rational(3));
  CHECK(z.to_string() == "1/2+3*i");
  CHECK(GaussianRational(Rational(0), Rational(-1)).to_string() == "-1*i");
  CHECK(GaussianRational(Rational(-2, 3)).to_string() == "-2/3");
}

TEST_CASE("polynomial canonical form") {
  ScalarPoly a = ScalarPoly::a0(), b = ScalarPoly::b0();
  ScalarPoly p = a * b - b * a;
  CHECK(p.is_zero());
  CHECK(p.to_string() == "0");
  ScalarPoly q = ScalarPoly(Rational(1, 3)) * a * b - ScalarPoly(Rational(1, 6)) * a * a * b * b;
  CHECK(q.to_string() == "a0^2*b0^2*(-1/6) + a0*b0*(1/3)");
  CHECK(q.common_ab_power() == 1);
  CHECK(q.divide_ab_power(1) == ScalarPoly(Rational(1, 3)) - ScalarPoly(Rational(1, 6)) * a * b);
  CHECK_THROWS_AS(q.divide_ab_power(2), std::domain_error);
  CHECK(q.divide_ab_power(1).multiply_ab_power(1) == q);
  CHECK(ScalarPoly::i().to_string() == "(1*i)");
  CHECK_FALSE(ScalarPoly::i().is_real());
  CHECK(a.coeff({1, 0}) == GaussianRational(1));
}

TEST_CASE("polynomial ring axioms and evaluation") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    ScalarPoly x = random_poly(rng), y = random_poly(rng), z = random_poly(rng);
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x - x == ScalarPoly());
    ScalarPoly acc = x;
    acc.add_product(y, z);
    CHECK(acc == x + y * z);
    const Rational a0(make_rational(static_cast<long>(rng() % 7) - 3, 2));
    const Rational b0(make_rational(static_cast<long>(rng() % 7) - 3, 3));
    CHECK(poly_eval(x * y, a0, b0) == poly_eval(x, a0, b0) * poly_eval(y, a0, b0));
    CHECK(poly_eval(x + y, a0, b0) == poly_eval(x, a0, b0) + poly_eval(y, a0, b0));
  }
}
