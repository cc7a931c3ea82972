#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <set>

#include "wres/residue.hpp"

using namespace wres;

namespace {

const ScalarPoly A = ScalarPoly::a0();
const ScalarPoly B = ScalarPoly::b0();

FunctionalDensity scaled(const FunctionalDensity& d, long s) { return {d.core * ScalarPoly(s), d.ab_power}; }

SymbolExpansion single_term(Dimension d, const TermKey& key, const CliffordOp& op) {
  auto s = SymbolExpansion(d, key.xi_degree());
  s.add(key, op);
  return s;
}

}  // namespace

TEST_CASE("density normalization") {
  const FunctionalDensity x{A * B * ScalarPoly(3), -2};
  CHECK(x.normalized().ab_power == -1);
  CHECK(x.normalized().core == ScalarPoly(3));
  CHECK(x == FunctionalDensity{ScalarPoly(3), -1});
  CHECK(!(x == FunctionalDensity{ScalarPoly(3), -2}));
  CHECK((FunctionalDensity{A * A * B, 0} + FunctionalDensity{B, 1}) == FunctionalDensity{A + B, 1});
  CHECK(FunctionalDensity{ScalarPoly(-16), -1}.to_string() == "(-16) * (a0*b0)^-1");
  CHECK(FunctionalDensity{A + B, 2}.to_string() == "(a0*(1) + b0*(1)) * (a0*b0)^2");
  CHECK(FunctionalDensity{}.to_string() == "0");
}

TEST_CASE("sphere volume") {
  CHECK(sphere_volume(Dimension(2)) == doctest::Approx(2 * M_PI));
  CHECK(sphere_volume(Dimension(4)) == doctest::Approx(2 * M_PI * M_PI));
  CHECK(sphere_volume(Dimension(6)) == doctest::Approx(M_PI * M_PI * M_PI));
}

TEST_CASE("integrate_density") {
  for (int n : {4, 6}) {
    const Dimension d(n);
    const auto id = CliffordOp::identity(d);
    const auto got = integrate_density(single_term(d, TermKey{{}, {}, -n}, id));
    CHECK(got == FunctionalDensity{ScalarPoly(1L << n), 0});
  }
  const Dimension d(4);
  MultiIndex odd{};
  odd[0] = 1;
  CHECK(integrate_density(single_term(d, TermKey{{}, odd, -5}, CliffordOp::identity(d))).is_zero());

  // xi_1^2 |xi|^-6 c~_1 c~_1: trace -16 a0 b0, sphere average 1/4.
  MultiIndex sq{};
  sq[0] = 2;
  const auto t = tildec_op(d, 1) * tildec_op(d, 1);
  CHECK(integrate_density(single_term(d, TermKey{{}, sq, -6}, t)) ==
        FunctionalDensity{A * B * ScalarPoly(-4), 0});

  MultiIndex x1{};
  x1[0] = 1;
  CHECK_THROWS_AS(integrate_density(single_term(d, TermKey{x1, {}, -4}, t)), std::domain_error);
  CHECK_THROWS_AS(integrate_density(SymbolExpansion(d, -2)), std::domain_error);
  CHECK(integrate_density(SymbolExpansion(d)).is_zero());
}

TEST_CASE("fused trace path equals materialized composition") {
  for (int n : {2, 4}) {
    const Dimension d(n);
    const auto ops = make_curvature_ops(random_riemann(d, 9));
    const auto u = random_frame_vector(d, 9, 0), v = random_frame_vector(d, 9, 1);
    const auto pq = symbol_product_PQ(*ops, u, v);
    const auto res = resolvent_symbols(*ops, d.m());
    const auto full = compose(pq, res, {-n, true}).order_part(-n);
    CHECK(integrate_composition(pq, res, -n) == integrate_density(full).core);
    const auto only = [](const ComposeSlot& s) { return s.order_a == 2 && s.alpha_degree == 0; };
    const auto slots = compose_breakdown(pq, res, -n);
    CHECK(integrate_composition(pq, res, -n, only) ==
          integrate_density(slots.at(ComposeSlot{2, -n - 2, 0})).core);
  }
}

TEST_CASE("part catalogue") {
  CHECK(all_parts().size() == 21u);
  CHECK(leaf_parts().size() == 18u);
  CHECK(zero_parts().size() == 10u);
  std::set<std::string> names;
  for (auto p : all_parts()) {
    names.insert(part_name(p));
    CHECK(parse_part(part_name(p)) == p);
  }
  CHECK(names.size() == 21u);
  CHECK(part_name(PartId::I3C) == "I-3-C");
  CHECK(!parse_part("I-7").has_value());
}

TEST_CASE("constant curvature oracles") {
  const Dimension d4(4);
  const auto s4 = RiemannTensor::constant_curvature(d4);
  const auto e1 = FrameVector::basis(d4, 1), e2 = FrameVector::basis(d4, 2);
  // Ric = 3, s = 12, g = 1: (4/3 * 3 - 2/3 * 12) * 16 = -64
  const auto i4 = compute_part(PartId::I4, s4, e1, e1);
  CHECK(i4.computed == FunctionalDensity{A * A * B * B * ScalarPoly(-64), 0});
  CHECK(i4.match);
  // -16 * (3 - 6) / 6 = 8
  const auto ein = einstein_functional(s4, e1, e1);
  CHECK(ein.total == FunctionalDensity{ScalarPoly(8), 0});
  CHECK(ein.match);
  CHECK(einstein_functional(s4, e1, e2).total.is_zero());
  CHECK(metric_functional(s4, e1, e1) == FunctionalDensity{ScalarPoly(-16), -1});
  CHECK(metric_functional(s4, e1, e2).is_zero());

  // n = 6: Ric = 5, s = 30, G = -10, N = -64 * (-10) / 6
  const Dimension d6(6);
  const auto f1 = FrameVector::basis(d6, 1);
  const auto ein6 = einstein_functional(RiemannTensor::constant_curvature(d6), f1, f1, false);
  CHECK(ein6.total == FunctionalDensity{ScalarPoly(make_rational(320, 3)), -1});
}

TEST_CASE("flat curvature gives zero") {
  for (int n : {2, 4, 6}) {
    const Dimension d(n);
    const auto u = random_frame_vector(d, 3, 0), v = random_frame_vector(d, 3, 1);
    const auto rep = verify_instance(RiemannTensor::flat(d), u, v);
    for (const auto& p : rep.parts) CHECK(p.computed.is_zero());
    CHECK(rep.einstein.is_zero());
    CHECK(rep.all_match());
    CHECK(rep.metric == FunctionalDensity{ScalarPoly(-(1L << n) * frame_inner(u, v)), -d.m() + 1});
  }
}

TEST_CASE("functionals are symmetric and bilinear") {
  const Dimension d(4);
  const auto r = random_riemann(d, 13);
  const auto u = random_frame_vector(d, 13, 0), w = random_frame_vector(d, 13, 2);
  const auto v = random_frame_vector(d, 13, 1);
  const auto e = [&](const FrameVector& x, const FrameVector& y) { return einstein_functional(r, x, y, false).total; };
  CHECK(e(u, v) == e(v, u));
  CHECK(e(u + Rational(3) * w, v) == e(u, v) + scaled(e(w, v), 3));
  CHECK(e(v, u + Rational(-2) * w) == e(v, u) + scaled(e(v, w), -2));
  const auto g = [&](const FrameVector& x, const FrameVector& y) { return metric_functional(r, x, y); };
  CHECK(g(u + w, v) == g(u, v) + g(w, v));
}

TEST_CASE("random instances match at n = 2 and 4") {
  for (int n : {2, 4}) {
    const Dimension d(n);
    for (std::uint64_t seed : {1u, 2u}) {
      const auto rep =
          verify_instance(random_riemann(d, seed), random_frame_vector(d, seed, 0), random_frame_vector(d, seed, 1));
      CHECK(rep.all_match());
      CHECK(rep.all_real);
      CHECK(rep.diagnostic.empty());
      for (auto z : zero_parts())
        for (const auto& p : rep.parts)
          if (p.id == z) CHECK(p.computed.is_zero());
    }
  }
}

TEST_CASE("verify_all keeps seed order across threads") {
  VerifyConfig cfg;
  cfg.dim = Dimension(2);
  cfg.seeds = {5, 1, 9, 3};
  cfg.threads = 3;
  const auto rep = verify_all(cfg);
  REQUIRE(rep.instances.size() == 4u);
  for (std::size_t i = 0; i < 4; ++i) CHECK(rep.instances[i].seed == cfg.seeds[i]);
  CHECK(rep.all_match());
  cfg.threads = 1;
  CHECK(report_to_json(verify_all(cfg)) == report_to_json(rep));
}

TEST_CASE("JSON report is canonical") {
  VerifyConfig cfg;
  cfg.dim = Dimension(4);
  cfg.seeds = {2};
  const auto text = report_to_json(verify_all(cfg));
  const auto j = nlohmann::json::parse(text);
  CHECK(j.dump(2) == text);
  CHECK(j["match"] == true);
  const auto& inst = j["instances"][0];
  CHECK(inst["dim"] == 4);
  CHECK(inst["seed"] == 2);
  CHECK(inst["parts"].size() == 21u);
  for (const char* key : {"zabdt_match", "zpdt_match", "metric_match", "einstein_match"}) CHECK(inst[key] == true);
  CHECK(inst["parts"][0]["id"] == "I-1-A");
  CHECK(poly_to_json(ScalarPoly(make_rational(-1, 2)) * A) == "[[1,0,-1,2,0,1]]");
}
