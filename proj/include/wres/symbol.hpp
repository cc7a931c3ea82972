#pragma once

#include <array>
#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "wres/clifford.hpp"
#include "wres/curvature.hpp"
#include "wres/scalar.hpp"

namespace wres {

/// Exponent vector over n coordinates (x or xi). Slot a-1 holds the
/// exponent of coordinate a.
using MultiIndex = std::array<std::uint8_t, kMaxDim>;

int mi_total(const MultiIndex& m);
MultiIndex mi_unit(int j);  // 1-based
MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b);
/// Product of factorials of the entries.
Rational mi_factorial(const MultiIndex& m);
std::string mi_to_string(const MultiIndex& m, int n);
/// All multi-indices over n coordinates with total degree k, in lexicographic order.
std::vector<MultiIndex> multi_indices(int n, int k);

/// Monomial shape x^x_mono xi^xi_mono |xi|^norm_power.
struct TermKey {
  MultiIndex x_mono{};
  MultiIndex xi_mono{};
  int norm_power = 0;

  /// Degree of homogeneity in xi.
  int xi_degree() const { return mi_total(xi_mono) + norm_power; }
  int x_degree() const { return mi_total(x_mono); }

  friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

/// Scaled copy of a key, produced by term-level differentiation.
struct KeyFactor {
  TermKey key;
  Rational factor;
};

/// d/dxi_j of x^a xi^b |xi|^p (j is 1-based):
/// b_j xi^(b-e_j) |xi|^p + p xi^(b+e_j) |xi|^(p-2).
std::vector<KeyFactor> d_xi(const TermKey& key, int j);
/// d/dx_j lowers the x-monomial; empty when x_j is absent.
std::vector<KeyFactor> d_x(const TermKey& key, int j);

struct SymbolTerm {
  TermKey key;
  CliffordOp coeff;
};

std::vector<SymbolTerm> d_xi(const SymbolTerm& t, int j);
std::vector<SymbolTerm> d_x(const SymbolTerm& t, int j);

/// Marker for x-Taylor data known to all degrees (differential-operator
/// symbols with constant coefficients).
inline constexpr int kExactX = INT_MAX / 4;
/// Marker for "every order below the stored ones vanishes".
inline constexpr int kNoLowerOrders = INT_MIN / 4;

/// Homogeneous pieces of a symbol at the center of normal coordinates.
///
/// Each stored order r keeps a map key -> Clifford coefficient whose keys
/// all have xi-degree r, and the largest x-degree through which the Taylor
/// data of that order is exact. Orders at or above known_down_to that are
/// not stored vanish; orders below it are unknown.
class SymbolExpansion {
 public:
  struct OrderBlock {
    int x_known = kExactX;
    std::map<TermKey, CliffordOp> terms;
  };

  explicit SymbolExpansion(Dimension dim, int known_down_to = kNoLowerOrders)
      : dim_(dim), known_down_to_(known_down_to) {}

  Dimension dim() const { return dim_; }
  int known_down_to() const { return known_down_to_; }
  const std::map<int, OrderBlock, std::greater<>>& orders() const { return orders_; }
  /// Highest stored order; throws when empty.
  int top_order() const;
  bool has_order(int order) const { return orders_.count(order) != 0; }
  const OrderBlock& block(int order) const;
  /// Declared x-exactness of an order (kExactX for vanishing orders,
  /// -1 when the order is unknown).
  int x_known(int order) const;

  /// Marks an order as known through the given x-degree.
  void declare_order(int order, int x_known);
  /// Adds coeff to the term; declares the order as exact if new. Terms of
  /// x-degree above the order's x_known are discarded.
  void add(const TermKey& key, const CliffordOp& coeff);
  void add_scaled(const TermKey& key, const GaussianRational& s, const CliffordOp& coeff);
  /// Adds every term of o (orders must be compatible); x_known becomes the
  /// minimum of the two.
  void merge(const SymbolExpansion& o);
  /// Drops zero coefficients and terms beyond each order's x_known.
  void purge();

  std::size_t term_count() const;
  /// Restriction to x = 0 (all orders keep only x-free terms, x_known 0).
  SymbolExpansion at_center() const;
  /// Single-order restriction.
  SymbolExpansion order_part(int order) const;

  /// One line per term, "x^{..} ξ^{..} ‖ξ‖^{p} ⊗ [fingerprint]", grouped by order.
  std::string dump() const;

  friend bool operator==(const SymbolExpansion& a, const SymbolExpansion& b);

 private:
  Dimension dim_;
  int known_down_to_;
  std::map<int, OrderBlock, std::greater<>> orders_;
};

SymbolExpansion operator+(const SymbolExpansion& a, const SymbolExpansion& b);
SymbolExpansion operator*(const GaussianRational& s, const SymbolExpansion& a);

/// Order-0 symbol with one constant term.
SymbolExpansion constant_symbol(const CliffordOp& op);

// ---------------------------------------------------------------------------
// Composition

struct ComposeOptions {
  /// Lowest order to produce (the highest is the sum of top orders).
  int lowest_order = 0;
  /// Evaluate at x = 0 after differentiation.
  bool at_center = false;
};

/// sum_alpha (-i)^|alpha| / alpha! d_xi^alpha A . d_x^alpha B, order by order.
/// Throws std::domain_error when a requested order depends on unknown orders
/// or unknown x-Taylor data.
SymbolExpansion compose(const SymbolExpansion& a, const SymbolExpansion& b, const ComposeOptions& opts);

/// Order-target piece of compose(a, b) at x = 0 split by (order_a, order_b, |alpha|).
struct ComposeSlot {
  int order_a;
  int order_b;
  int alpha_degree;
  friend auto operator<=>(const ComposeSlot&, const ComposeSlot&) = default;
};
std::map<ComposeSlot, SymbolExpansion> compose_breakdown(const SymbolExpansion& a, const SymbolExpansion& b, int target);

/// One product contribution of the composition at x = 0: the final term is
/// factor * (a_op * b_op) on key.
struct CenterProduct {
  ComposeSlot slot;
  TermKey key;
  GaussianRational factor;
  const CliffordOp* a_op;
  const CliffordOp* b_op;
};

/// Enumerates the products making up the order-target part of compose(a, b)
/// at x = 0 without multiplying any operators. slot_filter may be empty.
void visit_center_products(const SymbolExpansion& a, const SymbolExpansion& b, int target,
                           const std::function<bool(const ComposeSlot&)>& slot_filter,
                           const std::function<void(const CenterProduct&)>& visit);

// ---------------------------------------------------------------------------
// Connection data and the resolvent symbols

/// Taylor data at the center: T_a, T_ab (index (a-1)*n + (b-1)) and E.
struct ConnectionData {
  Dimension dim;
  std::vector<CliffordOp> t_a;
  std::vector<CliffordOp> t_ab;
  CliffordOp e;

  const CliffordOp& T(int a) const { return t_a[static_cast<std::size_t>(a - 1)]; }
  const CliffordOp& T(int a, int b) const {
    return t_ab[static_cast<std::size_t>((a - 1) * dim.n() + (b - 1))];
  }
};

/// First x-derivative at the center of <nabla_{d_a} e_s, e_t>, i.e.
/// d_l <nabla_{d_a} e_s, e_t>(0) = R(l, a, t, s) / 2 in the RiemannTensor convention.
Rational connection_form_derivative(const RiemannTensor& r, int l, int a, int s, int t);

/// T_a = 0, T_ab = d_b T~_a with T~_a = -1/4 sum <nabla_a e_s, e_t> c_s c_t
/// + 1/4 sum <nabla_a e_s, e_t> c^_s c^_t, E = 1/8 sum R_ijkl c^ c^ c c + s/4.
ConnectionData connection_from_curvature(const RiemannTensor& r);

/// Curvature-dependent Clifford operators shared by several symbols:
/// rc(b,a) = sum_st R_bats c_s c_t, rh(b,a) = sum_st R_bats c^_s c^_t and
/// the quartic sum_ijkl R_ijkl c^_i c^_j c_k c_l.
struct CurvatureOps {
  Dimension dim;
  RiemannTensor riemann;
  CurvatureContractions contractions;
  std::vector<CliffordOp> rc;
  std::vector<CliffordOp> rh;
  CliffordOp quartic;

  const CliffordOp& RC(int b, int a) const { return rc[static_cast<std::size_t>((b - 1) * dim.n() + (a - 1))]; }
  const CliffordOp& RH(int b, int a) const { return rh[static_cast<std::size_t>((b - 1) * dim.n() + (a - 1))]; }
};

std::shared_ptr<const CurvatureOps> make_curvature_ops(const RiemannTensor& r);

/// Term families of the resolvent symbols, used to isolate single pieces.
enum Family : unsigned {
  kFamMetric = 1u << 0,   // the whole order -2k piece
  kFamRic = 1u << 1,      // Ricci terms of orders -2k-1, -2k-2
  kFamCC = 1u << 2,       // R_bats c_s c_t terms
  kFamHH = 1u << 3,       // R_bats c^_s c^_t terms
  kFamECurv = 1u << 4,    // quartic part of E
  kFamEScalar = 1u << 5,  // s/4 part of E
  kFamAll = (1u << 6) - 1,
};

/// Symbols of the k-th inverse power of a generalized Laplacian with
/// connection data T_a, T_ab, E. Orders -2k, -2k-1, -2k-2, exact through
/// x-degree 2, 1, 0; lower orders unknown.
SymbolExpansion generic_resolvent_symbols(const RiemannTensor& r, const ConnectionData& conn, int k);

/// Closed form of the same symbols for the squared nonminimal
/// operator, with curvature data substituted, restricted to the given families.
SymbolExpansion resolvent_symbols(const CurvatureOps& ops, int k, unsigned families = kFamAll);
SymbolExpansion resolvent_symbols(const RiemannTensor& r, int k, unsigned families = kFamAll);

enum class PQRole { P, Q };

/// Symbol of c~(w) D~: order 1 is i c~(w) c~(xi), order 0 is the linear
/// x-term from the connection form (vanishing at the center). families may
/// select kFamCC and/or kFamHH of the order-0 part.
SymbolExpansion symbols_PQ(const CurvatureOps& ops, const FrameVector& w, unsigned families = kFamCC | kFamHH);

/// sigma(P Q) for P = c~(u) D~, Q = c~(v) D~ via the composition formula.
/// q_families restricts the order-0 part of Q. Orders 2, 1, 0.
SymbolExpansion symbol_product_PQ(const CurvatureOps& ops, const FrameVector& u, const FrameVector& v,
                                  unsigned q_families = kFamCC | kFamHH);

/// Closed-form center value of sigma_0(PQ) restricted to
/// the requested Q families (a cross-check of symbol_product_PQ).
CliffordOp sigma0_PQ_center_closed_form(const CurvatureOps& ops, const FrameVector& u, const FrameVector& v,
                                        unsigned q_families = kFamCC | kFamHH);

}  // namespace wres
