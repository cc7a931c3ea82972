#include "wres/residue.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "json_util.hpp"
#include "wres/sphere.hpp"

namespace wres {

// ---------------------------------------------------------------------------
// FunctionalDensity

FunctionalDensity FunctionalDensity::normalized() const {
  if (core.is_zero()) return {ScalarPoly(), 0};
  const int k = core.common_ab_power();
  return {core.divide_ab_power(k), ab_power + k};
}

std::string FunctionalDensity::to_string() const {
  if (ab_power == 0 || core.is_zero()) return core.to_string();
  const auto body = core.is_constant() ? core.to_string() : "(" + core.to_string() + ")";
  return body + " * (a0*b0)^" + std::to_string(ab_power);
}

FunctionalDensity operator+(const FunctionalDensity& a, const FunctionalDensity& b) {
  if (a.core.is_zero()) return b.normalized();
  if (b.core.is_zero()) return a.normalized();
  const int low = std::min(a.ab_power, b.ab_power);
  FunctionalDensity out{a.core.multiply_ab_power(a.ab_power - low) + b.core.multiply_ab_power(b.ab_power - low), low};
  return out.normalized();
}

bool operator==(const FunctionalDensity& a, const FunctionalDensity& b) {
  const auto x = a.normalized(), y = b.normalized();
  return x.ab_power == y.ab_power && x.core == y.core;
}

double sphere_volume(Dimension dim) {
  const int m = dim.m();
  double fact = 1;
  for (int k = 2; k < m; ++k) fact *= k;
  return 2 * std::pow(std::numbers::pi, m) / fact;
}

// ---------------------------------------------------------------------------
// Integration

namespace {

std::vector<int> xi_exponents(const TermKey& key, int n) {
  std::vector<int> alpha(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) alpha[static_cast<std::size_t>(i)] = key.xi_mono[static_cast<std::size_t>(i)];
  return alpha;
}

bool has_odd_exponent(const TermKey& key) {
  for (auto e : key.xi_mono)
    if (e % 2) return true;
  return false;
}

}  // namespace

FunctionalDensity integrate_density(const SymbolExpansion& s) {
  const Dimension dim = s.dim();
  const int order = -dim.n();
  if (s.x_known(order) < 0) throw std::domain_error("integrate_density: order -n of the symbol is unknown");
  FunctionalDensity out;
  if (!s.has_order(order)) return out;
  for (const auto& [key, op] : s.block(order).terms) {
    if (key.x_degree() != 0)
      throw std::domain_error("integrate_density: term still depends on x (evaluate at the center first)");
    if (has_odd_exponent(key)) continue;
    const Rational avg = sphere_average(dim, xi_exponents(key, dim.n()));
    out.core.add_scaled(GaussianRational(avg), op_trace(op));
  }
  return out;
}

ScalarPoly integrate_composition(const SymbolExpansion& a, const SymbolExpansion& b, int target,
                                 const std::function<bool(const ComposeSlot&)>& slot_filter) {
  const Dimension dim = a.dim();
  if (target != -dim.n()) throw std::invalid_argument("integrate_composition: target order must be -n");
  std::map<std::pair<const CliffordOp*, const CliffordOp*>, ScalarPoly> traces;
  ScalarPoly total;
  visit_center_products(a, b, target, slot_filter, [&](const CenterProduct& p) {
    if (has_odd_exponent(p.key)) return;
    const Rational avg = sphere_average(dim, xi_exponents(p.key, dim.n()));
    auto [it, fresh] = traces.try_emplace({p.a_op, p.b_op});
    if (fresh) it->second = op_trace_product(*p.a_op, *p.b_op);
    if (it->second.is_zero()) return;
    GaussianRational f = p.factor;
    f *= avg;
    total.add_scaled(f, it->second);
  });
  return total;
}

// ---------------------------------------------------------------------------
// Parts

const std::vector<PartId>& all_parts() {
  static const std::vector<PartId> v = {
      PartId::I1A, PartId::I1B, PartId::I1,  PartId::I2,  PartId::I3A, PartId::I3B, PartId::I3C,
      PartId::I3D, PartId::I3E, PartId::I3,  PartId::I4A, PartId::I4B, PartId::I4C, PartId::I4,
      PartId::I5,  PartId::I6,  PartId::II1, PartId::II2, PartId::II3, PartId::II4, PartId::II5};
  return v;
}

const std::vector<PartId>& leaf_parts() {
  static const std::vector<PartId> v = {PartId::I1A, PartId::I1B, PartId::I2,  PartId::I3A, PartId::I3B, PartId::I3C,
                                        PartId::I3D, PartId::I3E, PartId::I4A, PartId::I4B, PartId::I4C, PartId::I5,
                                        PartId::I6,  PartId::II1, PartId::II2, PartId::II3, PartId::II4, PartId::II5};
  return v;
}

const std::vector<PartId>& zero_parts() {
  static const std::vector<PartId> v = {PartId::I2,  PartId::I5,  PartId::I3B, PartId::I3C, PartId::I3D,
                                        PartId::I4B, PartId::I4C, PartId::II2, PartId::II3, PartId::II4};
  return v;
}

std::string part_name(PartId id) {
  switch (id) {
    case PartId::I1A: return "I-1-A";
    case PartId::I1B: return "I-1-B";
    case PartId::I1: return "I-1";
    case PartId::I2: return "I-2";
    case PartId::I3A: return "I-3-A";
    case PartId::I3B: return "I-3-B";
    case PartId::I3C: return "I-3-C";
    case PartId::I3D: return "I-3-D";
    case PartId::I3E: return "I-3-E";
    case PartId::I3: return "I-3";
    case PartId::I4A: return "I-4-A";
    case PartId::I4B: return "I-4-B";
    case PartId::I4C: return "I-4-C";
    case PartId::I4: return "I-4";
    case PartId::I5: return "I-5";
    case PartId::I6: return "I-6";
    case PartId::II1: return "II-1";
    case PartId::II2: return "II-2";
    case PartId::II3: return "II-3";
    case PartId::II4: return "II-4";
    case PartId::II5: return "II-5";
  }
  throw std::invalid_argument("unknown part id");
}

std::optional<PartId> parse_part(const std::string& name) {
  for (auto id : all_parts())
    if (part_name(id) == name) return id;
  return std::nullopt;
}

namespace {

struct PartPlan {
  bool part_two = false;  // c~(u)c~(v) against the (m-1)-th power
  unsigned q_families = kFamCC | kFamHH;
  unsigned families = kFamAll;
  int order_a = 0, order_b = 0, alpha = 0;  // slot, part I only
  bool negate = false;
};

PartPlan plan_for(PartId id, int m) {
  PartPlan p;
  auto slot = [&](int oa, int ob, int k) {
    p.order_a = oa;
    p.order_b = ob;
    p.alpha = k;
  };
  switch (id) {
    case PartId::I1A: slot(0, -2 * m, 0); p.q_families = kFamCC; break;
    case PartId::I1B: slot(0, -2 * m, 0); p.q_families = kFamHH; p.negate = true; break;
    case PartId::I1: slot(0, -2 * m, 0); break;
    case PartId::I2: slot(1, -2 * m - 1, 0); break;
    case PartId::I3A: slot(2, -2 * m - 2, 0); p.families = kFamRic; break;
    case PartId::I3B: slot(2, -2 * m - 2, 0); p.families = kFamCC; break;
    case PartId::I3C: slot(2, -2 * m - 2, 0); p.families = kFamHH; break;
    case PartId::I3D: slot(2, -2 * m - 2, 0); p.families = kFamECurv; break;
    case PartId::I3E: slot(2, -2 * m - 2, 0); p.families = kFamEScalar; break;
    case PartId::I3: slot(2, -2 * m - 2, 0); break;
    case PartId::I4A: slot(2, -2 * m - 1, 1); p.families = kFamRic; break;
    case PartId::I4B: slot(2, -2 * m - 1, 1); p.families = kFamCC; break;
    case PartId::I4C: slot(2, -2 * m - 1, 1); p.families = kFamHH; break;
    case PartId::I4: slot(2, -2 * m - 1, 1); break;
    case PartId::I5: slot(1, -2 * m, 1); break;
    case PartId::I6: slot(2, -2 * m, 2); break;
    case PartId::II1: p.part_two = true; p.families = kFamRic; break;
    case PartId::II2: p.part_two = true; p.families = kFamCC; break;
    case PartId::II3: p.part_two = true; p.families = kFamHH; break;
    case PartId::II4: p.part_two = true; p.families = kFamECurv; break;
    case PartId::II5: p.part_two = true; p.families = kFamEScalar; break;
  }
  return p;
}

}  // namespace

ResidueContext::ResidueContext(const RiemannTensor& r, const FrameVector& u, const FrameVector& v)
    : ResidueContext(make_curvature_ops(r), u, v) {}

ResidueContext::ResidueContext(std::shared_ptr<const CurvatureOps> ops, const FrameVector& u, const FrameVector& v)
    : u_(u), v_(v), ops_(std::move(ops)) {
  if (!(u.dim() == ops_->dim) || !(v.dim() == ops_->dim))
    throw std::invalid_argument("vectors and curvature have different dimensions");
  s_ = ops_->contractions.scalar_curv;
  ric_uv_ = ricci_bilinear(ops_->contractions, u, v);
  g_uv_ = frame_inner(u, v);
}

const SymbolExpansion& ResidueContext::sigma_pq(unsigned q_families) {
  auto it = pq_cache_.find(q_families);
  if (it == pq_cache_.end()) it = pq_cache_.emplace(q_families, symbol_product_PQ(*ops_, u_, v_, q_families)).first;
  return it->second;
}

const SymbolExpansion& ResidueContext::resolvent(int k, unsigned families) {
  auto it = resolvent_cache_.find({k, families});
  if (it == resolvent_cache_.end())
    it = resolvent_cache_.emplace(std::make_pair(k, families), resolvent_symbols(*ops_, k, families)).first;
  return it->second;
}

const SymbolExpansion& ResidueContext::uv_symbol() {
  if (!uv_) uv_ = constant_symbol(vector_clifford(CliffordKind::tilde, u_) * vector_clifford(CliffordKind::tilde, v_));
  return *uv_;
}

FunctionalDensity ResidueContext::expected(PartId id) const {
  const int m = dim().m();
  const ScalarPoly ab = ScalarPoly::a0() * ScalarPoly::b0();
  const ScalarPoly a2b2 = ab * ab;
  const Rational tr_id = Rational(mpz_class(1) << dim().n());
  const Rational sg = s_ * g_uv_;
  const Rational& ric = ric_uv_;
  auto val = [&](const ScalarPoly& poly, const Rational& x) { return FunctionalDensity{poly * ScalarPoly(x * tr_id), 0}; };
  const Rational anchor = make_rational(1, 4) * sg - make_rational(1, 2) * ric;
  const ScalarPoly plus = ScalarPoly::a0() + ScalarPoly::b0();
  const ScalarPoly minus = ScalarPoly::a0() - ScalarPoly::b0();
  switch (id) {
    case PartId::I1A: return val(ab * plus * plus * ScalarPoly(make_rational(1, 4)), anchor);
    case PartId::I1B: return val(ab * minus * minus * ScalarPoly(make_rational(1, 4)), anchor);
    case PartId::I1: return val(a2b2, anchor);
    case PartId::I3A: return val(a2b2, make_rational(m, 6) * sg - make_rational(1, 3) * ric);
    case PartId::I3E: return val(a2b2, make_rational(1 - m, 4) * sg);
    case PartId::I3: return val(a2b2, make_rational(3 - m, 12) * sg - make_rational(1, 3) * ric);
    case PartId::I4A:
    case PartId::I4: return val(a2b2, make_rational(4, 3) * ric - make_rational(2, 3) * sg);
    case PartId::I6: return val(a2b2, make_rational(1, 3) * sg - make_rational(2, 3) * ric);
    case PartId::II1: return val(ab, make_rational(-(m - 1), 6) * sg);
    case PartId::II5: return val(ab, make_rational(m - 1, 4) * sg);
    default: return {};
  }
}

SymbolExpansion ResidueContext::part_symbol(PartId id) {
  const int m = dim().m();
  const auto plan = plan_for(id, m);
  const int target = -2 * m;
  if (plan.part_two) {
    return compose(uv_symbol(), resolvent(m - 1, plan.families), ComposeOptions{target, true}).order_part(target);
  }
  auto slots = compose_breakdown(sigma_pq(plan.q_families), resolvent(m, plan.families), target);
  auto it = slots.find(ComposeSlot{plan.order_a, plan.order_b, plan.alpha});
  SymbolExpansion out(dim(), target);
  out.declare_order(target, 0);
  if (it != slots.end()) out.merge(it->second);
  return plan.negate ? GaussianRational(-1) * out : out;
}

PartReport ResidueContext::part(PartId id) {
  const int m = dim().m();
  const auto plan = plan_for(id, m);
  const int target = -2 * m;
  FunctionalDensity computed;
  if (plan.part_two) {
    computed.core = integrate_composition(uv_symbol(), resolvent(m - 1, plan.families), target);
  } else {
    const ComposeSlot want{plan.order_a, plan.order_b, plan.alpha};
    computed.core = integrate_composition(sigma_pq(plan.q_families), resolvent(m, plan.families), target,
                                          [&](const ComposeSlot& s) { return s == want; });
  }
  if (plan.negate) computed.core = -computed.core;
  PartReport rep{id, computed, expected(id), false, computed.is_real()};
  rep.match = rep.computed == rep.expected;
  return rep;
}

FunctionalDensity ResidueContext::metric() {
  const int m = dim().m();
  FunctionalDensity d{integrate_composition(uv_symbol(), resolvent(m, kFamAll), -2 * m), -m};
  return d.normalized();
}

FunctionalDensity ResidueContext::metric_expected() const {
  const int m = dim().m();
  const Rational tr_id = Rational(mpz_class(1) << dim().n());
  return FunctionalDensity{ScalarPoly(-tr_id * g_uv_), -m + 1}.normalized();
}

FunctionalDensity ResidueContext::n1_core() {
  if (!n1_) {
    const int m = dim().m();
    n1_ = FunctionalDensity{integrate_composition(sigma_pq(kFamCC | kFamHH), resolvent(m, kFamAll), -2 * m), 0};
  }
  return *n1_;
}

FunctionalDensity ResidueContext::n2_core() {
  if (!n2_) {
    const int m = dim().m();
    n2_ = FunctionalDensity{integrate_composition(uv_symbol(), resolvent(m - 1, kFamAll), -2 * m), 0};
  }
  return *n2_;
}

FunctionalDensity ResidueContext::i_sum_expected_value() const {
  const int m = dim().m();
  const ScalarPoly ab = ScalarPoly::a0() * ScalarPoly::b0();
  const Rational tr_id = Rational(mpz_class(1) << dim().n());
  const Rational x = make_rational(2 - m, 12) * s_ * g_uv_ - make_rational(1, 6) * ric_uv_;
  return {ab * ab * ScalarPoly(x * tr_id), 0};
}

FunctionalDensity ResidueContext::ii_sum_expected_value() const {
  const int m = dim().m();
  const ScalarPoly ab = ScalarPoly::a0() * ScalarPoly::b0();
  const Rational tr_id = Rational(mpz_class(1) << dim().n());
  return {ab * ScalarPoly(make_rational(m - 1, 12) * s_ * g_uv_ * tr_id), 0};
}

FunctionalDensity ResidueContext::einstein() {
  const int m = dim().m();
  FunctionalDensity n1 = n1_core(), n2 = n2_core();
  n1.ab_power = -m;
  n2.ab_power = -m + 1;
  return n1 + n2;
}

FunctionalDensity ResidueContext::einstein_expected() const {
  const int m = dim().m();
  const Rational tr_id = Rational(mpz_class(1) << dim().n());
  const Rational G = ric_uv_ - make_rational(1, 2) * s_ * g_uv_;
  return FunctionalDensity{ScalarPoly(-tr_id * G / 6), -m + 2}.normalized();
}

PartReport compute_part(PartId id, const RiemannTensor& r, const FrameVector& u, const FrameVector& v) {
  ResidueContext ctx(r, u, v);
  return ctx.part(id);
}

FunctionalDensity metric_functional(const RiemannTensor& r, const FrameVector& u, const FrameVector& v) {
  ResidueContext ctx(r, u, v);
  return ctx.metric();
}

EinsteinResult einstein_functional(const RiemannTensor& r, const FrameVector& u, const FrameVector& v,
                                   bool with_parts) {
  ResidueContext ctx(r, u, v);
  EinsteinResult out;
  const int m = r.dim().m();
  out.n1 = FunctionalDensity{ctx.n1_core().core, -m}.normalized();
  out.n2 = FunctionalDensity{ctx.n2_core().core, -m + 1}.normalized();
  out.total = ctx.einstein();
  out.expected = ctx.einstein_expected();
  out.match = out.total == out.expected;
  if (with_parts)
    for (auto id : all_parts()) out.parts.push_back(ctx.part(id));
  return out;
}

// ---------------------------------------------------------------------------
// Verification

bool InstanceReport::all_match() const {
  for (const auto& p : parts)
    if (!p.match) return false;
  return i_sum_match && ii_sum_match && metric_match && einstein_match && n1_split_match && einstein_symmetric &&
         all_real;
}

InstanceReport verify_instance(const RiemannTensor& r, const FrameVector& u, const FrameVector& v) {
  ResidueContext ctx(r, u, v);
  InstanceReport rep;
  rep.n = r.dim().n();
  rep.u = u.to_string();
  rep.v = v.to_string();
  bool real = true;
  for (auto id : all_parts()) {
    rep.parts.push_back(ctx.part(id));
    real = real && rep.parts.back().real;
  }
  auto sum_of = [&](std::initializer_list<PartId> ids) {
    FunctionalDensity acc;
    for (auto id : ids)
      for (const auto& p : rep.parts)
        if (p.id == id) acc = acc + p.computed;
    return acc;
  };
  rep.i_sum = sum_of({PartId::I1, PartId::I2, PartId::I3, PartId::I4, PartId::I5, PartId::I6});
  rep.i_sum_expected = ctx.i_sum_expected_value();
  rep.ii_sum = sum_of({PartId::II1, PartId::II2, PartId::II3, PartId::II4, PartId::II5});
  rep.ii_sum_expected = ctx.ii_sum_expected_value();
  rep.i_sum_match = rep.i_sum == rep.i_sum_expected;
  rep.ii_sum_match = rep.ii_sum == rep.ii_sum_expected;
  rep.n1_split_match = ctx.n1_core() == rep.i_sum && ctx.n2_core() == rep.ii_sum;

  rep.metric = ctx.metric();
  rep.metric_expected = ctx.metric_expected();
  rep.metric_match = rep.metric == rep.metric_expected;
  rep.einstein = ctx.einstein();
  rep.einstein_expected = ctx.einstein_expected();
  rep.einstein_match = rep.einstein == rep.einstein_expected;

  ResidueContext swapped(ctx.shared_ops(), v, u);
  rep.einstein_symmetric = swapped.einstein() == rep.einstein;

  real = real && rep.i_sum.is_real() && rep.ii_sum.is_real() && rep.metric.is_real() && rep.einstein.is_real() &&
         ctx.n1_core().is_real() && ctx.n2_core().is_real();
  rep.all_real = real;

  for (const auto& p : rep.parts) {
    if (p.match && p.real) continue;
    rep.diagnostic = "part " + part_name(p.id) + " mismatch\n  computed: " + p.computed.to_string() +
                     "\n  expected: " + p.expected.to_string() + "\n  terms of the composed symbol:\n" +
                     ctx.part_symbol(p.id).dump();
    break;
  }
  if (rep.diagnostic.empty() && !rep.all_match()) {
    rep.diagnostic = "part sums or functionals mismatch\n  I sum: " + rep.i_sum.to_string() + " vs " +
                     rep.i_sum_expected.to_string() + "\n  II sum: " + rep.ii_sum.to_string() + " vs " +
                     rep.ii_sum_expected.to_string() + "\n  metric: " + rep.metric.to_string() + " vs " +
                     rep.metric_expected.to_string() + "\n  einstein: " + rep.einstein.to_string() + " vs " +
                     rep.einstein_expected.to_string() + "\n";
  }
  return rep;
}

bool VerifyReport::all_match() const {
  for (const auto& i : instances)
    if (!i.all_match()) return false;
  return true;
}

RiemannTensor config_curvature(const VerifyConfig& config, std::uint64_t seed) {
  switch (config.source) {
    case CurvatureSource::random: return random_riemann(config.dim, seed);
    case CurvatureSource::constant: return RiemannTensor::constant_curvature(config.dim);
    case CurvatureSource::flat: return RiemannTensor::flat(config.dim);
    case CurvatureSource::file:
      if (!config.file_tensor) throw std::invalid_argument("curvature file source without a tensor");
      return *config.file_tensor;
  }
  throw std::invalid_argument("unknown curvature source");
}

namespace {

std::string source_name(const VerifyConfig& c) {
  switch (c.source) {
    case CurvatureSource::random: return "random";
    case CurvatureSource::constant: return "constant";
    case CurvatureSource::flat: return "flat";
    case CurvatureSource::file: return c.file_name;
  }
  return "";
}

}  // namespace

VerifyReport verify_all(const VerifyConfig& config) {
  VerifyReport out;
  out.instances.resize(config.seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < config.seeds.size(); i = next++) {
      const auto seed = config.seeds[i];
      const auto r = config_curvature(config, seed);
      const auto u = config.u ? *config.u : random_frame_vector(config.dim, seed, 0);
      const auto v = config.v ? *config.v : random_frame_vector(config.dim, seed, 1);
      auto rep = verify_instance(r, u, v);
      rep.seed = seed;
      rep.curvature = source_name(config);
      out.instances[i] = std::move(rep);
    }
  };
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, config.seeds.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::json poly_json(const ScalarPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [d, c] : p.terms())
    arr.push_back({d.a0, d.b0, detail::integer_to_json(c.re.get_num()), detail::integer_to_json(c.re.get_den()),
                   detail::integer_to_json(c.im.get_num()), detail::integer_to_json(c.im.get_den())});
  return arr;
}

nlohmann::json density_json(const FunctionalDensity& d) {
  return {{"core", d.core.to_string()}, {"ab_power", d.ab_power}, {"terms", poly_json(d.core)}};
}

nlohmann::json instance_json(const InstanceReport& r) {
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& p : r.parts)
    parts.push_back({{"id", part_name(p.id)},
                     {"computed", p.computed.to_string()},
                     {"expected", p.expected.to_string()},
                     {"match", p.match},
                     {"real", p.real}});
  nlohmann::json j = {{"dim", r.n},
                      {"seed", r.seed},
                      {"curvature", r.curvature},
                      {"u", r.u},
                      {"v", r.v},
                      {"parts", parts},
                      {"zabdt", {{"computed", r.i_sum.to_string()}, {"expected", r.i_sum_expected.to_string()}}},
                      {"zpdt", {{"computed", r.ii_sum.to_string()}, {"expected", r.ii_sum_expected.to_string()}}},
                      {"zabdt_match", r.i_sum_match},
                      {"zpdt_match", r.ii_sum_match},
                      {"metric", {{"computed", density_json(r.metric)}, {"expected", density_json(r.metric_expected)}}},
                      {"metric_match", r.metric_match},
                      {"einstein",
                       {{"computed", density_json(r.einstein)}, {"expected", density_json(r.einstein_expected)}}},
                      {"einstein_match", r.einstein_match},
                      {"einstein_symmetric", r.einstein_symmetric},
                      {"split_match", r.n1_split_match},
                      {"all_real", r.all_real},
                      {"match", r.all_match()}};
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

}  // namespace

std::string poly_to_json(const ScalarPoly& p) { return poly_json(p).dump(); }

std::string instance_to_json(const InstanceReport& inst) { return instance_json(inst).dump(2); }

std::string report_to_json(const VerifyReport& report) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& i : report.instances) arr.push_back(instance_json(i));
  nlohmann::json j = {{"instances", arr}, {"match", report.all_match()}};
  return j.dump(2);
}

}  // namespace wres
