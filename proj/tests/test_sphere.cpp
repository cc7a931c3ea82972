#include <doctest.h>

#include <random>

#include "wres/sphere.hpp"

using namespace wres;

TEST_CASE("sphere averages match the product formula") {
  const Dimension d4(4);
  CHECK(sphere_average(d4, {2, 2, 0, 0}) == Rational(1, 24));
  CHECK(sphere_average(d4, {4, 0, 0, 0}) == Rational(1, 8));
  CHECK(sphere_average(d4, {2, 0, 0, 0}) == Rational(1, 4));
  CHECK(sphere_average(d4, {0, 0, 0, 0}) == Rational(1));
  CHECK(sphere_average(d4, {1, 1, 0, 0}) == Rational(0));
  CHECK(sphere_average(d4, {3, 1, 0, 0}) == Rational(0));
  CHECK(sphere_average(Dimension(2), {2, 2}) == Rational(1, 8));
  CHECK_THROWS_AS(sphere_average(d4, {2, 2}), std::invalid_argument);

  std::mt19937 rng(5);
  for (int n : {2, 4, 6, 8}) {
    const Dimension d(n);
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<int> alpha(static_cast<std::size_t>(n));
      for (auto& a : alpha) a = static_cast<int>(rng() % 7);
      CHECK(sphere_average(d, alpha) == sphere_average_closed_form(d, alpha));
    }
  }
}

TEST_CASE("sum of squares averages to one") {
  for (int n : {2, 4, 6}) {
    const Dimension d(n);
    Rational total = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<int> alpha(static_cast<std::size_t>(n), 0);
        alpha[static_cast<std::size_t>(i)] += 2;
        alpha[static_cast<std::size_t>(j)] += 2;
        total += sphere_average(d, alpha);
      }
    CHECK(total == Rational(1));
  }
}
