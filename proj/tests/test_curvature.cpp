#include <doctest.h>

#include "wres/curvature.hpp"

using namespace wres;

TEST_CASE("constant curvature contractions") {
  const Dimension d(4);
  const auto r = RiemannTensor::constant_curvature(d);
  CHECK_FALSE(check_symmetries(r).has_value());
  const auto c = contract(r);
  CHECK(c.scalar_curv == Rational(12));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(c.ricci[a][b] == Rational(a == b ? 3 : 0));
  const auto e1 = FrameVector::basis(d, 1);
  CHECK(einstein_bilinear(r, e1, e1) == Rational(-3));
  CHECK(r(1, 2, 1, 2) == Rational(1));
}

TEST_CASE("random tensors satisfy every symmetry") {
  for (int n : {2, 4, 6}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto r = random_riemann(Dimension(n), seed);
      CHECK_FALSE(check_symmetries(r).has_value());
      CHECK(r == random_riemann(Dimension(n), seed));
    }
  }
  CHECK_FALSE(random_riemann(Dimension(4), 1) == random_riemann(Dimension(4), 2));
  CHECK_FALSE(random_riemann(Dimension(4), 3) == RiemannTensor::flat(Dimension(4)));
}

TEST_CASE("projection fixes curvature tensors") {
  const auto r = random_riemann(Dimension(4), 9);
  std::vector<Rational> raw;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      for (int k = 1; k <= 4; ++k)
        for (int l = 1; l <= 4; ++l) raw.push_back(r(i, j, k, l));
  CHECK(RiemannTensor::project(Dimension(4), raw) == r);
}

TEST_CASE("einstein form is symmetric and bilinear") {
  const Dimension d(4);
  const auto r = random_riemann(d, 3);
  const auto u = random_frame_vector(d, 3, 0), v = random_frame_vector(d, 3, 1), w = random_frame_vector(d, 3, 2);
  CHECK(einstein_bilinear(r, u, v) == einstein_bilinear(r, v, u));
  CHECK(einstein_bilinear(r, u + w, v) == einstein_bilinear(r, u, v) + einstein_bilinear(r, w, v));
  CHECK(einstein_bilinear(r, Rational(3, 2) * u, v) == Rational(3, 2) * einstein_bilinear(r, u, v));
}

TEST_CASE("json round trip and validation") {
  const auto r = random_riemann(Dimension(4), 4);
  CHECK(riemann_from_json(riemann_to_json(r)) == r);
  CHECK(riemann_from_json(riemann_to_json(RiemannTensor::flat(Dimension(2)))) == RiemannTensor::flat(Dimension(2)));

  try {
    riemann_from_json(R"({"n": 4, "entries": [[1,2,1,2,1,1]]})");
    FAIL("expected a symmetry error");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("R_ijkl = -R_jikl") != std::string::npos);
    CHECK(msg.find("(1,2,1,2)") != std::string::npos);
  }
  CHECK_THROWS_AS(riemann_from_json(R"({"n": 5, "entries": []})"), std::invalid_argument);
  CHECK_THROWS_AS(riemann_from_json(R"({"n": 4, "entries": [[0,1,1,1,1,1]]})"), std::invalid_argument);
  CHECK_THROWS_AS(riemann_from_json(R"({"n": 4, "entries": [[1,2,1,2,1,0]]})"), std::invalid_argument);
  CHECK_THROWS_AS(riemann_from_json("not json"), std::invalid_argument);

  // Symmetric in the first pair swaps but with a broken Bianchi identity.
  std::string bad = R"({"n": 4, "entries": [)";
  const int perms[8][4] = {{1, 2, 3, 4}, {2, 1, 4, 3}, {3, 4, 1, 2}, {4, 3, 2, 1},
                           {2, 1, 3, 4}, {1, 2, 4, 3}, {3, 4, 2, 1}, {4, 3, 1, 2}};
  for (int p = 0; p < 8; ++p) {
    const int sign = p < 4 ? 1 : -1;
    bad += "[" + std::to_string(perms[p][0]) + "," + std::to_string(perms[p][1]) + "," + std::to_string(perms[p][2]) +
           "," + std::to_string(perms[p][3]) + "," + std::to_string(sign) + ",1]";
    if (p != 7) bad += ",";
  }
  bad += "]}";
  try {
    riemann_from_json(bad);
    FAIL("expected a Bianchi error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("Bianchi") != std::string::npos);
  }
}
