#include "wres/symbol.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wres {

// ---------------------------------------------------------------------------
// Multi-indices

int mi_total(const MultiIndex& m) {
  int t = 0;
  for (auto e : m) t += e;
  return t;
}

MultiIndex mi_unit(int j) {
  if (j < 1 || j > kMaxDim) throw std::out_of_range("multi-index slot out of range");
  MultiIndex m{};
  m[static_cast<std::size_t>(j - 1)] = 1;
  return m;
}

MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex m{};
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<std::uint8_t>(a[i] + b[i]);
  return m;
}

Rational mi_factorial(const MultiIndex& m) {
  mpz_class f = 1;
  for (auto e : m)
    for (int k = 2; k <= e; ++k) f *= k;
  return Rational(f);
}

std::string mi_to_string(const MultiIndex& m, int n) {
  std::string s = "{";
  for (int i = 0; i < n; ++i) {
    if (i) s += ",";
    s += std::to_string(m[static_cast<std::size_t>(i)]);
  }
  return s + "}";
}

std::vector<MultiIndex> multi_indices(int n, int k) {
  std::vector<MultiIndex> out;
  MultiIndex cur{};
  std::function<void(int, int)> rec = [&](int slot, int left) {
    if (slot == n - 1) {
      cur[static_cast<std::size_t>(slot)] = static_cast<std::uint8_t>(left);
      out.push_back(cur);
      cur[static_cast<std::size_t>(slot)] = 0;
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[static_cast<std::size_t>(slot)] = static_cast<std::uint8_t>(e);
      rec(slot + 1, left - e);
    }
    cur[static_cast<std::size_t>(slot)] = 0;
  };
  if (n > 0 && k >= 0) rec(0, k);
  return out;
}

// ---------------------------------------------------------------------------
// Term calculus

std::vector<KeyFactor> d_xi(const TermKey& key, int j) {
  const auto s = static_cast<std::size_t>(j - 1);
  if (j < 1 || j > kMaxDim) throw std::out_of_range("d_xi index out of range");
  std::vector<KeyFactor> out;
  if (key.xi_mono[s] > 0) {
    TermKey k = key;
    --k.xi_mono[s];
    out.push_back({k, Rational(key.xi_mono[s])});
  }
  if (key.norm_power != 0) {
    TermKey k = key;
    ++k.xi_mono[s];
    k.norm_power -= 2;
    out.push_back({k, Rational(key.norm_power)});
  }
  return out;
}

std::vector<KeyFactor> d_x(const TermKey& key, int j) {
  const auto s = static_cast<std::size_t>(j - 1);
  if (j < 1 || j > kMaxDim) throw std::out_of_range("d_x index out of range");
  if (key.x_mono[s] == 0) return {};
  TermKey k = key;
  --k.x_mono[s];
  return {{k, Rational(key.x_mono[s])}};
}

namespace {

std::vector<SymbolTerm> scale_terms(const std::vector<KeyFactor>& kf, const CliffordOp& op) {
  std::vector<SymbolTerm> out;
  for (const auto& [k, f] : kf) out.push_back({k, op * ScalarPoly(f)});
  return out;
}

}  // namespace

std::vector<SymbolTerm> d_xi(const SymbolTerm& t, int j) { return scale_terms(d_xi(t.key, j), t.coeff); }
std::vector<SymbolTerm> d_x(const SymbolTerm& t, int j) { return scale_terms(d_x(t.key, j), t.coeff); }

// ---------------------------------------------------------------------------
// SymbolExpansion

int SymbolExpansion::top_order() const {
  if (orders_.empty()) throw std::logic_error("symbol expansion has no orders");
  return orders_.begin()->first;
}

const SymbolExpansion::OrderBlock& SymbolExpansion::block(int order) const {
  auto it = orders_.find(order);
  if (it == orders_.end()) throw std::out_of_range("symbol order " + std::to_string(order) + " not stored");
  return it->second;
}

int SymbolExpansion::x_known(int order) const {
  auto it = orders_.find(order);
  if (it != orders_.end()) return it->second.x_known;
  return order >= known_down_to_ ? kExactX : -1;
}

void SymbolExpansion::declare_order(int order, int x_known) {
  if (order < known_down_to_) throw std::invalid_argument("declared order below known_down_to");
  auto [it, inserted] = orders_.try_emplace(order);
  it->second.x_known = inserted ? x_known : std::min(it->second.x_known, x_known);
}

void SymbolExpansion::add(const TermKey& key, const CliffordOp& coeff) {
  if (!(coeff.dim() == dim_)) throw std::invalid_argument("symbol term has wrong dimension");
  const int order = key.xi_degree();
  if (order < known_down_to_) throw std::invalid_argument("term order below known_down_to");
  auto [it, inserted] = orders_.try_emplace(order);
  if (key.x_degree() > it->second.x_known) return;
  auto [t, fresh] = it->second.terms.try_emplace(key, coeff);
  if (!fresh) t->second += coeff;
}

void SymbolExpansion::add_scaled(const TermKey& key, const GaussianRational& s, const CliffordOp& coeff) {
  if (s.is_zero()) return;
  CliffordOp c = coeff;
  c *= ScalarPoly(s);
  add(key, c);
}

void SymbolExpansion::merge(const SymbolExpansion& o) {
  if (!(o.dim_ == dim_)) throw std::invalid_argument("merging symbols of different dimensions");
  known_down_to_ = std::max(known_down_to_, o.known_down_to_);
  for (const auto& [order, blk] : o.orders_) {
    if (order < known_down_to_) continue;
    declare_order(order, blk.x_known);
    for (const auto& [k, op] : blk.terms) add(k, op);
  }
  for (auto it = orders_.begin(); it != orders_.end();)
    it = it->first < known_down_to_ ? orders_.erase(it) : std::next(it);
  purge();
}

void SymbolExpansion::purge() {
  for (auto& [order, blk] : orders_)
    for (auto it = blk.terms.begin(); it != blk.terms.end();)
      it = (it->second.is_zero() || it->first.x_degree() > blk.x_known) ? blk.terms.erase(it) : std::next(it);
}

std::size_t SymbolExpansion::term_count() const {
  std::size_t c = 0;
  for (const auto& [o, blk] : orders_) c += blk.terms.size();
  return c;
}

SymbolExpansion SymbolExpansion::at_center() const {
  SymbolExpansion out(dim_, known_down_to_);
  for (const auto& [order, blk] : orders_) {
    if (blk.x_known < 0) throw std::domain_error("center value of order " + std::to_string(order) + " is unknown");
    out.declare_order(order, 0);
    for (const auto& [k, op] : blk.terms)
      if (k.x_degree() == 0) out.add(k, op);
  }
  out.purge();
  return out;
}

SymbolExpansion SymbolExpansion::order_part(int order) const {
  SymbolExpansion out(dim_, order);
  auto it = orders_.find(order);
  if (it == orders_.end()) {
    if (order < known_down_to_) throw std::domain_error("order " + std::to_string(order) + " is unknown");
    out.declare_order(order, kExactX);
    return out;
  }
  out.orders_.emplace(order, it->second);
  return out;
}

std::string SymbolExpansion::dump() const {
  const int n = dim_.n();
  std::ostringstream os;
  for (const auto& [order, blk] : orders_) {
    os << "order " << order << " (x-exact through ";
    if (blk.x_known >= kExactX) os << "all degrees";
    else os << "degree " << blk.x_known;
    os << ")\n";
    for (const auto& [k, op] : blk.terms)
      os << "  x^" << mi_to_string(k.x_mono, n) << " ξ^" << mi_to_string(k.xi_mono, n) << " ‖ξ‖^{"
         << k.norm_power << "} ⊗ [" << op.fingerprint() << "]\n";
  }
  return os.str();
}

bool operator==(const SymbolExpansion& a, const SymbolExpansion& b) {
  if (!(a.dim_ == b.dim_) || a.known_down_to_ != b.known_down_to_ || a.orders_.size() != b.orders_.size()) return false;
  for (auto ia = a.orders_.begin(), ib = b.orders_.begin(); ia != a.orders_.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second.x_known != ib->second.x_known) return false;
    if (ia->second.terms.size() != ib->second.terms.size()) return false;
    for (auto ta = ia->second.terms.begin(), tb = ib->second.terms.begin(); ta != ia->second.terms.end(); ++ta, ++tb)
      if (!(ta->first == tb->first) || !(ta->second == tb->second)) return false;
  }
  return true;
}

SymbolExpansion operator+(const SymbolExpansion& a, const SymbolExpansion& b) {
  SymbolExpansion out = a;
  out.merge(b);
  return out;
}

SymbolExpansion operator*(const GaussianRational& s, const SymbolExpansion& a) {
  SymbolExpansion out(a.dim(), a.known_down_to());
  for (const auto& [order, blk] : a.orders()) {
    out.declare_order(order, blk.x_known);
    for (const auto& [k, op] : blk.terms) out.add_scaled(k, s, op);
  }
  out.purge();
  return out;
}

SymbolExpansion constant_symbol(const CliffordOp& op) {
  SymbolExpansion out(op.dim());
  out.declare_order(0, kExactX);
  out.add(TermKey{}, op);
  out.purge();
  return out;
}

// ---------------------------------------------------------------------------
// Composition

namespace {

GaussianRational minus_i_power(int k) {
  switch (k % 4) {
    case 0: return GaussianRational(1);
    case 1: return GaussianRational(Rational(0), Rational(-1));
    case 2: return GaussianRational(-1);
    default: return GaussianRational(Rational(0), Rational(1));
  }
}

// d_xi^alpha applied to every term of a block, as (derived key, factor, source op).
struct Derived {
  TermKey key;
  Rational factor;
  const CliffordOp* op;
};

std::vector<Derived> xi_derivatives(const SymbolExpansion::OrderBlock& blk, const MultiIndex& alpha, int n,
                                    bool center_only) {
  std::vector<Derived> out;
  for (const auto& [key, op] : blk.terms) {
    if (center_only && key.x_degree() != 0) continue;
    std::map<TermKey, Rational> cur{{key, Rational(1)}};
    for (int j = 1; j <= n && !cur.empty(); ++j)
      for (int rep = 0; rep < alpha[static_cast<std::size_t>(j - 1)]; ++rep) {
        std::map<TermKey, Rational> next;
        for (const auto& [k, f] : cur)
          for (const auto& [k2, f2] : d_xi(k, j)) next[k2] += f * f2;
        std::erase_if(next, [](const auto& kv) { return sgn(kv.second) == 0; });
        cur = std::move(next);
      }
    for (auto& [k, f] : cur) out.push_back({k, f, &op});
  }
  return out;
}

// d_x^alpha of every term. At the center only the x^alpha terms survive, with
// factor alpha!.
std::vector<Derived> x_derivatives(const SymbolExpansion::OrderBlock& blk, const MultiIndex& alpha, bool center) {
  std::vector<Derived> out;
  for (const auto& [key, op] : blk.terms) {
    bool ok = true;
    Rational f = 1;
    TermKey k = key;
    for (std::size_t s = 0; s < alpha.size() && ok; ++s) {
      if (key.x_mono[s] < alpha[s]) {
        ok = false;
        break;
      }
      for (int t = 0; t < alpha[s]; ++t) f *= key.x_mono[s] - t;
      k.x_mono[s] = static_cast<std::uint8_t>(key.x_mono[s] - alpha[s]);
    }
    if (!ok) continue;
    if (center && k.x_degree() != 0) continue;
    out.push_back({k, f, &op});
  }
  return out;
}

void check_orders_known(const SymbolExpansion& a, const SymbolExpansion& b, int target) {
  if (a.orders().empty() || b.orders().empty()) return;
  const int a_top = a.top_order(), b_top = b.top_order();
  if (a.known_down_to() > kNoLowerOrders && a.known_down_to() - 1 + b_top >= target)
    throw std::domain_error("composition order " + std::to_string(target) + " needs unknown orders below " +
                            std::to_string(a.known_down_to()) + " of the left factor");
  if (b.known_down_to() > kNoLowerOrders && a_top + b.known_down_to() - 1 >= target)
    throw std::domain_error("composition order " + std::to_string(target) + " needs unknown orders below " +
                            std::to_string(b.known_down_to()) + " of the right factor");
}

struct SlotVisit {
  ComposeSlot slot;
  MultiIndex alpha;
  GaussianRational coeff;  // (-i)^|alpha| / alpha!
  std::vector<Derived> left;
  std::vector<Derived> right;
  int x_known;  // exactness of this contribution in x
};

void visit_slots(const SymbolExpansion& a, const SymbolExpansion& b, int target, bool at_center,
                 const std::function<bool(const ComposeSlot&)>& filter,
                 const std::function<void(const SlotVisit&)>& visit) {
  if (!(a.dim() == b.dim())) throw std::invalid_argument("composing symbols of different dimensions");
  check_orders_known(a, b, target);
  const int n = a.dim().n();
  for (const auto& [oa, blk_a] : a.orders()) {
    for (const auto& [ob, blk_b] : b.orders()) {
      const int k = oa + ob - target;
      if (k < 0) continue;
      const ComposeSlot slot{oa, ob, k};
      if (filter && !filter(slot)) continue;
      if (at_center && blk_a.x_known < 0)
        throw std::domain_error("center value of left order " + std::to_string(oa) + " is unknown");
      for (const auto& alpha : multi_indices(n, k)) {
        auto left = xi_derivatives(blk_a, alpha, n, at_center);
        if (left.empty()) continue;
        if (blk_b.x_known < k)
          throw std::domain_error("composition needs x-degree " + std::to_string(k) + " of right order " +
                                  std::to_string(ob) + ", known only through " + std::to_string(blk_b.x_known));
        auto right = x_derivatives(blk_b, alpha, at_center);
        GaussianRational coeff = minus_i_power(k);
        coeff *= Rational(1) / mi_factorial(alpha);
        const int xk = at_center ? 0 : std::min(blk_a.x_known, blk_b.x_known - k);
        visit(SlotVisit{slot, alpha, coeff, std::move(left), std::move(right), xk});
      }
    }
  }
}

TermKey product_key(const TermKey& l, const TermKey& r) {
  return TermKey{mi_add(l.x_mono, r.x_mono), mi_add(l.xi_mono, r.xi_mono), l.norm_power + r.norm_power};
}

}  // namespace

SymbolExpansion compose(const SymbolExpansion& a, const SymbolExpansion& b, const ComposeOptions& opts) {
  SymbolExpansion out(a.dim(), opts.lowest_order);
  if (a.orders().empty() || b.orders().empty()) return out;
  const int top = a.top_order() + b.top_order();
  for (int target = top; target >= opts.lowest_order; --target) {
    // Exactness of the target order is fixed by all slots, so collect them
    // first and only multiply the products that survive truncation.
    std::vector<SlotVisit> visits;
    int xk = opts.at_center ? 0 : kExactX;
    visit_slots(a, b, target, opts.at_center, {}, [&](const SlotVisit& v) {
      xk = std::min(xk, v.x_known);
      visits.push_back(v);
    });
    xk = std::max(xk, -1);
    std::map<TermKey, CliffordOp> acc;
    for (const auto& v : visits)
      for (const auto& l : v.left)
        for (const auto& r : v.right) {
          const TermKey key = product_key(l.key, r.key);
          if (key.x_degree() > xk) continue;
          GaussianRational f = v.coeff;
          f *= l.factor * r.factor;
          CliffordOp prod = *l.op * *r.op;
          prod *= ScalarPoly(f);
          auto [it, fresh] = acc.try_emplace(key, std::move(prod));
          if (!fresh) it->second += prod;
        }
    out.declare_order(target, xk);
    for (auto& [k, op] : acc) out.add(k, op);
  }
  out.purge();
  return out;
}

std::map<ComposeSlot, SymbolExpansion> compose_breakdown(const SymbolExpansion& a, const SymbolExpansion& b,
                                                         int target) {
  std::map<ComposeSlot, SymbolExpansion> out;
  visit_slots(a, b, target, true, {}, [&](const SlotVisit& v) {
    auto [it, fresh] = out.try_emplace(v.slot, SymbolExpansion(a.dim(), target));
    if (fresh) it->second.declare_order(target, 0);
    for (const auto& l : v.left)
      for (const auto& r : v.right) {
        GaussianRational f = v.coeff;
        f *= l.factor * r.factor;
        it->second.add_scaled(product_key(l.key, r.key), f, *l.op * *r.op);
      }
  });
  for (auto& [slot, s] : out) s.purge();
  return out;
}

void visit_center_products(const SymbolExpansion& a, const SymbolExpansion& b, int target,
                           const std::function<bool(const ComposeSlot&)>& slot_filter,
                           const std::function<void(const CenterProduct&)>& visit) {
  visit_slots(a, b, target, true, slot_filter, [&](const SlotVisit& v) {
    for (const auto& l : v.left)
      for (const auto& r : v.right) {
        GaussianRational f = v.coeff;
        f *= l.factor * r.factor;
        visit(CenterProduct{v.slot, product_key(l.key, r.key), f, l.op, r.op});
      }
  });
}

// ---------------------------------------------------------------------------
// Connection data

Rational connection_form_derivative(const RiemannTensor& r, int l, int a, int s, int t) {
  return make_rational(1, 2) * r(l, a, t, s);
}

ConnectionData connection_from_curvature(const RiemannTensor& r) {
  const Dimension dim = r.dim();
  const int n = dim.n();
  ConnectionData conn{dim, std::vector<CliffordOp>(static_cast<std::size_t>(n), CliffordOp(dim)),
                      std::vector<CliffordOp>(static_cast<std::size_t>(n * n), CliffordOp(dim)), CliffordOp(dim)};
  std::vector<CliffordOp> cc, hh;
  for (int s = 1; s <= n; ++s)
    for (int t = 1; t <= n; ++t) {
      cc.push_back(c_op(dim, s) * c_op(dim, t));
      hh.push_back(hatc_op(dim, s) * hatc_op(dim, t));
    }
  // T_ab = d_b T~_a; the connection form vanishes at the center so T_a = 0.
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      CliffordOp& tab = conn.t_ab[static_cast<std::size_t>((a - 1) * n + (b - 1))];
      for (int s = 1; s <= n; ++s)
        for (int t = 1; t <= n; ++t) {
          const Rational w = connection_form_derivative(r, b, a, s, t);
          if (sgn(w) == 0) continue;
          const auto idx = static_cast<std::size_t>((s - 1) * n + (t - 1));
          tab.add_scaled(ScalarPoly(make_rational(-1, 4) * w), cc[idx]);
          tab.add_scaled(ScalarPoly(make_rational(1, 4) * w), hh[idx]);
        }
    }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      CliffordOp inner(dim);
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          const Rational& x = r(i, j, k, l);
          if (sgn(x) != 0) inner.add_scaled(ScalarPoly(x), cc[static_cast<std::size_t>((k - 1) * n + (l - 1))]);
        }
      if (!inner.is_zero())
        conn.e.add_scaled(ScalarPoly(make_rational(1, 8)), hh[static_cast<std::size_t>((i - 1) * n + (j - 1))] * inner);
    }
  conn.e += CliffordOp::scalar(dim, ScalarPoly(make_rational(1, 4) * contract(r).scalar_curv));
  return conn;
}

std::shared_ptr<const CurvatureOps> make_curvature_ops(const RiemannTensor& r) {
  const Dimension dim = r.dim();
  const int n = dim.n();
  auto ops = std::make_shared<CurvatureOps>(CurvatureOps{dim, r, contract(r), {}, {}, CliffordOp(dim)});
  std::vector<CliffordOp> cc, hh;
  for (int s = 1; s <= n; ++s)
    for (int t = 1; t <= n; ++t) {
      cc.push_back(c_op(dim, s) * c_op(dim, t));
      hh.push_back(hatc_op(dim, s) * hatc_op(dim, t));
    }
  ops->rc.assign(static_cast<std::size_t>(n * n), CliffordOp(dim));
  ops->rh.assign(static_cast<std::size_t>(n * n), CliffordOp(dim));
  for (int b = 1; b <= n; ++b)
    for (int a = 1; a <= n; ++a) {
      const auto ba = static_cast<std::size_t>((b - 1) * n + (a - 1));
      for (int s = 1; s <= n; ++s)
        for (int t = 1; t <= n; ++t) {
          const Rational& x = r(b, a, t, s);
          if (sgn(x) == 0) continue;
          const auto st = static_cast<std::size_t>((s - 1) * n + (t - 1));
          ops->rc[ba].add_scaled(ScalarPoly(x), cc[st]);
          ops->rh[ba].add_scaled(ScalarPoly(x), hh[st]);
        }
    }
  // sum_ij c^_i c^_j (sum_kl R_ijkl c_k c_l)
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      CliffordOp inner(dim);
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          const Rational& x = r(i, j, k, l);
          if (sgn(x) != 0) inner.add_scaled(ScalarPoly(x), cc[static_cast<std::size_t>((k - 1) * n + (l - 1))]);
        }
      if (!inner.is_zero()) ops->quartic += hh[static_cast<std::size_t>((i - 1) * n + (j - 1))] * inner;
    }
  return ops;
}

// ---------------------------------------------------------------------------
// Resolvent symbols

namespace {

TermKey key_of(const MultiIndex& x, const MultiIndex& xi, int p) { return TermKey{x, xi, p}; }

const GaussianRational kI = GaussianRational::i();

GaussianRational real(const Rational& q) { return GaussianRational(q); }
GaussianRational imag(const Rational& q) { return GaussianRational(Rational(0), q); }

// Order -2k piece: |xi|^{-2k-2} (delta_ab - k/3 R_ajbl x^j x^l) xi_a xi_b with
// delta_ab xi_a xi_b written as |xi|^2.
void add_metric_block(SymbolExpansion& s, const RiemannTensor& r, int k) {
  const Dimension dim = r.dim();
  const int n = dim.n();
  const auto id = CliffordOp::identity(dim);
  s.add(key_of({}, {}, -2 * k), id);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      for (int j = 1; j <= n; ++j)
        for (int l = 1; l <= n; ++l) {
          const Rational& x = r(a, j, b, l);
          if (sgn(x) == 0) continue;
          s.add_scaled(key_of(mi_add(mi_unit(j), mi_unit(l)), mi_add(mi_unit(a), mi_unit(b)), -2 * k - 2),
                       real(make_rational(-k, 3) * x), id);
        }
}

void declare_resolvent_orders(SymbolExpansion& s, int k) {
  s.declare_order(-2 * k, 2);
  s.declare_order(-2 * k - 1, 1);
  s.declare_order(-2 * k - 2, 0);
}

}  // namespace

SymbolExpansion generic_resolvent_symbols(const RiemannTensor& r, const ConnectionData& conn, int k) {
  const Dimension dim = r.dim();
  if (!(conn.dim == dim)) throw std::invalid_argument("generic_resolvent_symbols: connection data has wrong dimension");
  if (k < 0) throw std::invalid_argument("generic_resolvent_symbols: power must be nonnegative");
  const int n = dim.n();
  const auto con = contract(r);
  const auto id = CliffordOp::identity(dim);
  SymbolExpansion s(dim, -2 * k - 2);
  declare_resolvent_orders(s, k);

  add_metric_block(s, r, k);

  // Order -2k-1.
  for (int a = 1; a <= n; ++a) {
    s.add_scaled(key_of({}, mi_unit(a), -2 * k - 2), imag(Rational(-2 * k)), conn.T(a));
    for (int b = 1; b <= n; ++b) {
      const auto key = key_of(mi_unit(b), mi_unit(a), -2 * k - 2);
      s.add_scaled(key, imag(make_rational(-2 * k, 3) * con.ricci[a - 1][b - 1]), id);
      s.add_scaled(key, imag(Rational(-2 * k)), conn.T(a, b));
    }
  }

  // Order -2k-2.
  const Rational kk1(k * (k + 1));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      const auto key = key_of({}, mi_add(mi_unit(a), mi_unit(b)), -2 * k - 4);
      s.add_scaled(key, real(kk1 / 3 * con.ricci[a - 1][b - 1]), id);
      s.add_scaled(key, real(-2 * kk1), conn.T(a) * conn.T(b));
      s.add_scaled(key, real(2 * kk1), conn.T(a, b));
    }
  const auto low = key_of({}, {}, -2 * k - 2);
  for (int a = 1; a <= n; ++a) {
    s.add_scaled(low, real(Rational(k)), conn.T(a) * conn.T(a));
    s.add_scaled(low, real(Rational(-k)), conn.T(a, a));
  }
  s.add_scaled(low, real(Rational(-k)), conn.e);
  s.purge();
  return s;
}

SymbolExpansion resolvent_symbols(const CurvatureOps& ops, int k, unsigned families) {
  const Dimension dim = ops.dim;
  if (k < 0) throw std::invalid_argument("resolvent_symbols: power must be nonnegative");
  const int n = dim.n();
  const auto& ric = ops.contractions.ricci;
  const auto id = CliffordOp::identity(dim);
  SymbolExpansion s(dim, -2 * k - 2);
  declare_resolvent_orders(s, k);

  if (families & kFamMetric) add_metric_block(s, ops.riemann, k);

  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      const auto key = key_of(mi_unit(b), mi_unit(a), -2 * k - 2);
      if (families & kFamRic) s.add_scaled(key, imag(make_rational(-2 * k, 3) * ric[a - 1][b - 1]), id);
      if (families & kFamCC) s.add_scaled(key, imag(make_rational(k, 4)), ops.RC(b, a));
      if (families & kFamHH) s.add_scaled(key, imag(make_rational(-k, 4)), ops.RH(b, a));
    }

  const Rational kk1(k * (k + 1));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      const auto key = key_of({}, mi_add(mi_unit(a), mi_unit(b)), -2 * k - 4);
      if (families & kFamRic) s.add_scaled(key, real(kk1 / 3 * ric[a - 1][b - 1]), id);
      if (families & kFamCC) s.add_scaled(key, real(-kk1 / 4), ops.RC(b, a));
      if (families & kFamHH) s.add_scaled(key, real(kk1 / 4), ops.RH(b, a));
    }
  const auto low = key_of({}, {}, -2 * k - 2);
  if (families & kFamECurv) s.add_scaled(low, real(make_rational(-k, 8)), ops.quartic);
  if (families & kFamEScalar) s.add_scaled(low, real(make_rational(-k, 4) * ops.contractions.scalar_curv), id);
  s.purge();
  return s;
}

SymbolExpansion resolvent_symbols(const RiemannTensor& r, int k, unsigned families) {
  return resolvent_symbols(*make_curvature_ops(r), k, families);
}

SymbolExpansion symbols_PQ(const CurvatureOps& ops, const FrameVector& w, unsigned families) {
  const Dimension dim = ops.dim;
  if (!(w.dim() == dim)) throw std::invalid_argument("symbols_PQ: vector has wrong dimension");
  const int n = dim.n();
  const auto cw = vector_clifford(CliffordKind::tilde, w);
  SymbolExpansion s(dim);
  s.declare_order(1, 1);
  s.declare_order(0, 1);
  for (int j = 1; j <= n; ++j) s.add_scaled(key_of({}, mi_unit(j), 0), kI, cw * tildec_op(dim, j));
  // d_l omega_st(e_p)(0) = -R_lpts / 2 feeds -1/4 omega c~ c~ c c + 1/4 omega c~ c~ c^ c^.
  for (int l = 1; l <= n; ++l) {
    CliffordOp inner(dim);
    for (int p = 1; p <= n; ++p) {
      CliffordOp q(dim);
      if (families & kFamCC) q.add_scaled(ScalarPoly(make_rational(1, 8)), ops.RC(l, p));
      if (families & kFamHH) q.add_scaled(ScalarPoly(make_rational(-1, 8)), ops.RH(l, p));
      if (!q.is_zero()) inner += tildec_op(dim, p) * q;
    }
    if (!inner.is_zero()) s.add(key_of(mi_unit(l), {}, 0), cw * inner);
  }
  s.purge();
  return s;
}

SymbolExpansion symbol_product_PQ(const CurvatureOps& ops, const FrameVector& u, const FrameVector& v,
                                  unsigned q_families) {
  const auto p = symbols_PQ(ops, u);
  const auto q = symbols_PQ(ops, v, q_families);
  return compose(p, q, ComposeOptions{0, false});
}

CliffordOp sigma0_PQ_center_closed_form(const CurvatureOps& ops, const FrameVector& u, const FrameVector& v,
                                        unsigned q_families) {
  const Dimension dim = ops.dim;
  const int n = dim.n();
  const auto cu = vector_clifford(CliffordKind::tilde, u);
  const auto cv = vector_clifford(CliffordKind::tilde, v);
  CliffordOp out(dim);
  for (int j = 1; j <= n; ++j)
    for (int p = 1; p <= n; ++p) {
      const auto head = cu * tildec_op(dim, j) * cv * tildec_op(dim, p);
      if (q_families & kFamCC) out.add_scaled(ScalarPoly(make_rational(1, 8)), head * ops.RC(j, p));
      if (q_families & kFamHH) out.add_scaled(ScalarPoly(make_rational(-1, 8)), head * ops.RH(j, p));
    }
  return out;
}

}  // namespace wres
