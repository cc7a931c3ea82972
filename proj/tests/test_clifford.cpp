#include <doctest.h>

#include "wres/clifford.hpp"

using namespace wres;

namespace {

const ScalarPoly A = ScalarPoly::a0();
const ScalarPoly B = ScalarPoly::b0();

}  // namespace

TEST_CASE("dimension validation") {
  CHECK_THROWS_AS(Dimension(5), std::invalid_argument);
  CHECK_THROWS_AS(Dimension(0), std::invalid_argument);
  CHECK_THROWS_AS(Dimension(10), std::invalid_argument);
  CHECK(Dimension(6).m() == 3);
  CHECK(Dimension(4).basis_size() == 16u);
}

TEST_CASE("clifford relations") {
  for (int n : {2, 4, 6}) {
    const Dimension d(n);
    const auto id = CliffordOp::identity(d);
    CHECK(op_trace(id) == ScalarPoly(static_cast<long>(1) << n));
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        const long delta = i == j ? 1 : 0;
        CHECK(anticommutator(c_op(d, i), c_op(d, j)) == CliffordOp::scalar(d, ScalarPoly(-2 * delta)));
        CHECK(anticommutator(hatc_op(d, i), hatc_op(d, j)) == CliffordOp::scalar(d, ScalarPoly(2 * delta)));
        CHECK(anticommutator(c_op(d, i), hatc_op(d, j)).is_zero());
        CHECK(anticommutator(tildec_op(d, i), tildec_op(d, j)) ==
              CliffordOp::scalar(d, ScalarPoly(-2 * delta) * A * B));
        CHECK(anticommutator(tildec_op(d, i), c_op(d, j)) == CliffordOp::scalar(d, ScalarPoly(-delta) * (A + B)));
        CHECK(anticommutator(tildec_op(d, i), hatc_op(d, j)) == CliffordOp::scalar(d, ScalarPoly(delta) * (A - B)));
        CHECK(anticommutator(ext_op(d, i), int_op(d, j)) == CliffordOp::scalar(d, ScalarPoly(delta)));
      }
  }
}

TEST_CASE("tilde generator decomposition") {
  const Dimension d(4);
  const ScalarPoly half(Rational(1, 2));
  for (int j = 1; j <= 4; ++j)
    CHECK(tildec_op(d, j) == half * (A + B) * c_op(d, j) + half * (A - B) * hatc_op(d, j));
}

TEST_CASE("worked traces") {
  const Dimension d(4);
  const auto e1 = FrameVector::basis(d, 1);
  const auto t = vector_clifford(CliffordKind::tilde, e1);
  CHECK(t * t == CliffordOp::scalar(d, -A * B));
  CHECK(op_trace(t * t) == ScalarPoly(-16) * A * B);
  CHECK(op_trace_product(t, t) == ScalarPoly(-16) * A * B);
}

TEST_CASE("trace cyclicity and distinct index traces") {
  const Dimension d(4);
  const auto x = tildec_op(d, 1) * hatc_op(d, 2) + c_op(d, 3) * ScalarPoly::i();
  const auto y = c_op(d, 2) * tildec_op(d, 4) * hatc_op(d, 1);
  const auto z = hatc_op(d, 3) + tildec_op(d, 2) * c_op(d, 4);
  CHECK(op_trace(x * y * z) == op_trace(y * z * x));
  CHECK(op_trace(x * y) == op_trace_product(x, y));
  CHECK(op_trace(y * z) == op_trace_product(z, y));
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      if (i == j) continue;
      CHECK(op_trace(c_op(d, i) * c_op(d, j)).is_zero());
      CHECK(op_trace(hatc_op(d, i) * c_op(d, j)).is_zero());
      CHECK(op_trace(tildec_op(d, i)).is_zero());
    }
}

TEST_CASE("operator algebra") {
  const Dimension d(4);
  const auto x = tildec_op(d, 1) + hatc_op(d, 2);
  const auto y = c_op(d, 3) * ScalarPoly(Rational(2, 3));
  const auto z = tildec_op(d, 4) * hatc_op(d, 4);
  CHECK((x * y) * z == x * (y * z));
  CHECK(x * (y + z) == x * y + x * z);
  CHECK((x - x).is_zero());
  CHECK(x * CliffordOp::identity(d) == x);
  CHECK(CliffordOp::scalar(d, A).is_scalar());
  CHECK_FALSE(x.is_scalar());
  CHECK(CliffordOp::scalar(d, A).fingerprint() == "id*(a0*(1))");
  CHECK(x.fingerprint() == (tildec_op(d, 1) + hatc_op(d, 2)).fingerprint());
  CHECK(x.fingerprint() != y.fingerprint());
  const auto xe = x.evaluated(Rational(1), Rational(1));
  CHECK(xe == c_op(d, 1) + hatc_op(d, 2));
  CHECK((x * y).evaluated(Rational(2), Rational(3)) == x.evaluated(Rational(2), Rational(3)) * y.evaluated(2, 3));
  CHECK_THROWS_AS(c_op(d, 5), std::out_of_range);
  CHECK_THROWS_AS(c_op(d, 0), std::out_of_range);
  CHECK_THROWS_AS(CliffordOp::identity(d) + CliffordOp::identity(Dimension(2)), std::invalid_argument);
}

TEST_CASE("specialization to the minimal operator") {
  const Dimension d(4);
  for (int j = 1; j <= 4; ++j) CHECK(tildec_op(d, j).evaluated(Rational(1), Rational(1)) == c_op(d, j));
}
