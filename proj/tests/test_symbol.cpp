#include <doctest.h>

#include <algorithm>
#include <map>

#include "wres/symbol.hpp"

using namespace wres;

namespace {

MultiIndex mi(std::initializer_list<int> e) {
  MultiIndex m{};
  int k = 0;
  for (int v : e) m[static_cast<std::size_t>(k++)] = static_cast<std::uint8_t>(v);
  return m;
}

std::map<TermKey, Rational> collect(const std::vector<KeyFactor>& fs) {
  std::map<TermKey, Rational> out;
  for (const auto& f : fs) out[f.key] += f.factor;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::map<TermKey, Rational> d_xi_twice(const TermKey& k, int a, int b) {
  std::map<TermKey, Rational> out;
  for (const auto& f : d_xi(k, a))
    for (const auto& g : d_xi(f.key, b)) out[g.key] += f.factor * g.factor;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace

TEST_CASE("multi-index helpers") {
  CHECK(mi_total(mi({2, 0, 1})) == 3);
  CHECK(mi_unit(2) == mi({0, 1}));
  CHECK(mi_factorial(mi({3, 2})) == 12);
  CHECK(multi_indices(4, 2).size() == 10u);
  CHECK(multi_indices(6, 1).size() == 6u);
  CHECK(mi_to_string(mi({1, 0, 2, 0}), 4) == "{1,0,2,0}");
}

TEST_CASE("xi derivative of a norm-power term") {
  // d/dxi_1 (xi_1^2 |xi|^-2) = 2 xi_1 |xi|^-2 - 2 xi_1^3 |xi|^-4
  const TermKey k{{}, mi({2}), -2};
  const auto got = collect(d_xi(k, 1));
  std::map<TermKey, Rational> want{{TermKey{{}, mi({1}), -2}, 2}, {TermKey{{}, mi({3}), -4}, -2}};
  CHECK(got == want);
  // d/dxi_2 |xi|^-4 = -4 xi_2 |xi|^-6
  const auto g2 = collect(d_xi(TermKey{{}, {}, -4}, 2));
  CHECK(g2 == std::map<TermKey, Rational>{{TermKey{{}, mi({0, 1}), -6}, -4}});
  for (const auto& f : d_xi(k, 1)) CHECK(f.key.xi_degree() == k.xi_degree() - 1);
}

TEST_CASE("x derivative") {
  const TermKey k{mi({2, 1}), mi({1}), 0};
  const auto g = collect(d_x(k, 1));
  CHECK(g == std::map<TermKey, Rational>{{TermKey{mi({1, 1}), mi({1}), 0}, 2}});
  CHECK(d_x(k, 3).empty());
}

TEST_CASE("xi derivatives commute") {
  const TermKey k{{}, mi({1, 2, 0, 1}), -6};
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) CHECK(d_xi_twice(k, a, b) == d_xi_twice(k, b, a));
}

TEST_CASE("composition with a constant symbol") {
  const Dimension d(4);
  const auto r = random_riemann(d, 5);
  const auto b = resolvent_symbols(r, 2);
  const auto id = constant_symbol(CliffordOp::identity(d));
  const int low = -6;
  auto left = compose(id, b, {low, false});
  auto expect = SymbolExpansion(d, low);
  for (const auto& [ord, blk] : b.orders()) {
    if (ord < low) continue;
    expect.declare_order(ord, blk.x_known);
    for (const auto& [key, op] : blk.terms) expect.add(key, op);
  }
  CHECK(left == expect);
  CHECK(compose(b, id, {low, false}) == expect);
}

TEST_CASE("composition is bilinear in the left factor") {
  const Dimension d(4);
  const auto ops = make_curvature_ops(random_riemann(d, 2));
  const auto u = random_frame_vector(d, 2, 0), w = random_frame_vector(d, 2, 2);
  const auto v = random_frame_vector(d, 2, 1);
  const auto q = symbols_PQ(*ops, v);
  const GaussianRational s(make_rational(3, 2), make_rational(-1, 3));
  const auto lhs = compose(symbols_PQ(*ops, u) + s * symbols_PQ(*ops, w), q, {0, false});
  const auto rhs = compose(symbols_PQ(*ops, u), q, {0, false}) + s * compose(symbols_PQ(*ops, w), q, {0, false});
  CHECK(lhs == rhs);
}

TEST_CASE("composition refuses unknown orders") {
  const Dimension d(4);
  const auto r = random_riemann(d, 1);
  const auto res = resolvent_symbols(r, 2);  // orders -4, -5, -6 known
  const auto id = constant_symbol(CliffordOp::identity(d));
  CHECK_NOTHROW(compose(id, res, {-6, true}));
  CHECK_THROWS_AS(compose(id, res, {-7, true}), std::domain_error);

  const auto pq = symbols_PQ(*make_curvature_ops(r), FrameVector::basis(d, 1));
  CHECK_NOTHROW(compose(pq, res, {-5, true}));
  CHECK_THROWS_AS(compose(pq, res, {-6, true}), std::domain_error);
  const auto partial = compose(res, pq, {-4, false});
  // sigma_1 of c~(w) D~ is exact only through x-degree 1.
  CHECK(partial.x_known(-3) == 1);
  CHECK(partial.x_known(-4) == 0);

  auto cubic = SymbolExpansion(d);
  cubic.add(TermKey{{}, mi({3}), 0}, CliffordOp::identity(d));
  CHECK_NOTHROW(compose(cubic, res, {-3, true}));
  CHECK_THROWS_AS(compose(cubic, res, {-4, true}), std::domain_error);
}

TEST_CASE("resolvent families") {
  const Dimension d(4);
  const auto ops = make_curvature_ops(random_riemann(d, 7));
  const auto all = resolvent_symbols(*ops, 2);
  auto sum = SymbolExpansion(d, all.known_down_to());
  for (unsigned f : {kFamMetric, kFamRic, kFamCC, kFamHH, kFamECurv, kFamEScalar})
    sum = sum + resolvent_symbols(*ops, 2, f);
  CHECK(sum == all);
  CHECK(all.known_down_to() == -6);
  CHECK(all.x_known(-4) == 2);
  CHECK(all.x_known(-5) == 1);
  CHECK(all.x_known(-6) == 0);
}

TEST_CASE("flat resolvent is the plain norm power") {
  for (int n : {2, 4, 6}) {
    const Dimension d(n);
    const auto s = resolvent_symbols(RiemannTensor::flat(d), d.m());
    CHECK(s.block(-n - 1).terms.empty());
    CHECK(s.block(-n - 2).terms.empty());
    const auto& blk = s.block(-n);
    REQUIRE(blk.terms.size() == 1u);
    CHECK(blk.terms.begin()->first == TermKey{{}, {}, -n});
    CHECK(blk.terms.begin()->second == CliffordOp::identity(d));
  }
}

TEST_CASE("resolvent power zero is the identity") {
  const Dimension d(4);
  const auto s = resolvent_symbols(random_riemann(d, 3), 0);
  CHECK(s.known_down_to() == -2);
  CHECK(s.block(-1).terms.empty());
  CHECK(s.block(-2).terms.empty());
  const auto& blk = s.block(0);
  REQUIRE(blk.terms.size() == 1u);
  CHECK(blk.terms.begin()->first == TermKey{});
  CHECK(blk.terms.begin()->second == CliffordOp::identity(d));
}

TEST_CASE("generic formula with curvature connection data equals the closed form") {
  for (int n : {4, 6}) {
    const Dimension d(n);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto r = random_riemann(d, seed);
      const auto conn = connection_from_curvature(r);
      for (int k : {d.m() - 1, d.m()}) {
        const auto l1 = generic_resolvent_symbols(r, conn, k);
        const auto l2 = resolvent_symbols(r, k);
        CHECK(l1 == l2);
      }
    }
  }
}

TEST_CASE("connection data on a sphere") {
  const Dimension d(4);
  const auto r = RiemannTensor::constant_curvature(d);
  CHECK(connection_form_derivative(r, 1, 2, 2, 1) == make_rational(1, 2));
  CHECK(connection_form_derivative(r, 1, 2, 1, 2) == make_rational(-1, 2));
  CHECK(connection_form_derivative(r, 1, 1, 1, 2) == 0);
  const auto conn = connection_from_curvature(r);
  for (const auto& t : conn.t_a) CHECK(t.is_zero());
  // E = 1/8 sum R c^c^cc + s/4 has trace 2^n * s/4 since the quartic part is traceless.
  CHECK(op_trace(conn.e) == ScalarPoly(make_rational(16 * 12, 4)));
}

TEST_CASE("sigma(PQ) at the center") {
  for (int n : {2, 4, 6}) {
    const Dimension d(n);
    const auto ops = make_curvature_ops(random_riemann(d, 11));
    const auto u = random_frame_vector(d, 11, 0), v = random_frame_vector(d, 11, 1);
    for (unsigned fam : {unsigned(kFamCC), unsigned(kFamHH), unsigned(kFamCC | kFamHH)}) {
      const auto pq = symbol_product_PQ(*ops, u, v, fam).at_center();
      const auto closed = sigma0_PQ_center_closed_form(*ops, u, v, fam);
      CliffordOp got(d);
      if (pq.has_order(0)) {
        for (const auto& [key, op] : pq.block(0).terms) {
          CHECK(key == TermKey{});
          got += op;
        }
      }
      CHECK(got == closed);
      // sigma_1(PQ) vanishes at the center.
      CHECK((!pq.has_order(1) || pq.block(1).terms.empty()));
    }
    // sigma_2(PQ) = -c~(u)c~(xi)c~(v)c~(xi)
    const auto pq = symbol_product_PQ(*ops, u, v);
    const auto& top = pq.block(2);
    for (int a = 1; a <= n; ++a) {
      const TermKey key{{}, mi_add(mi_unit(a), mi_unit(a)), 0};
      const auto expect = -(vector_clifford(CliffordKind::tilde, u) * tildec_op(d, a) *
                            vector_clifford(CliffordKind::tilde, v) * tildec_op(d, a));
      CHECK(top.terms.at(key) == expect);
    }
  }
}

TEST_CASE("dump format") {
  const Dimension d(2);
  auto s = SymbolExpansion(d, -2);
  s.add(TermKey{mi({1, 0}), mi({0, 2}), -4}, CliffordOp::identity(d));
  const auto text = s.dump();
  CHECK(text.find("x^{1,0} ξ^{0,2} ‖ξ‖^{-4} ⊗ [id*((1))]") != std::string::npos);
}

TEST_CASE("at_center and order_part") {
  const Dimension d(4);
  const auto s = resolvent_symbols(random_riemann(d, 4), 2);
  const auto c = s.at_center();
  for (const auto& [ord, blk] : c.orders())
    for (const auto& [key, op] : blk.terms) CHECK(key.x_degree() == 0);
  CHECK(s.order_part(-5).orders().size() == 1u);
  CHECK(s.term_count() > c.term_count());
}
