#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wres/scalar.hpp"

namespace wres {

/// Largest supported manifold dimension. Operators are 2^n x 2^n.
inline constexpr int kMaxDim = 8;

/// Even manifold dimension n = 2m.
class Dimension {
 public:
  /// Throws std::invalid_argument unless n is even and 2 <= n <= kMaxDim.
  explicit Dimension(int n);

  int n() const { return n_; }
  int m() const { return n_ / 2; }
  /// 2^n, the rank of the exterior algebra.
  std::uint32_t basis_size() const { return 1u << n_; }

  friend bool operator==(Dimension, Dimension) = default;

 private:
  int n_;
};

/// Components of a tangent vector in the orthonormal frame at the center of
/// normal coordinates.
class FrameVector {
 public:
  FrameVector(Dimension dim, std::vector<Rational> components);
  static FrameVector zero(Dimension dim);
  /// Unit vector e_j, 1-based.
  static FrameVector basis(Dimension dim, int j);

  Dimension dim() const { return dim_; }
  const Rational& operator[](int a) const { return c_[static_cast<std::size_t>(a)]; }
  const std::vector<Rational>& components() const { return c_; }

  FrameVector& operator+=(const FrameVector& o);
  friend FrameVector operator+(FrameVector a, const FrameVector& b) { return a += b; }
  friend FrameVector operator*(const Rational& s, FrameVector v);
  friend bool operator==(const FrameVector&, const FrameVector&) = default;

  std::string to_string() const;

 private:
  Dimension dim_;
  std::vector<Rational> c_;
};

/// Parses "e3" (basis vector) or comma-separated rationals such as
/// "1/2,0,3,0". Throws std::invalid_argument on malformed text or a length
/// other than n.
FrameVector parse_frame_vector(Dimension dim, const std::string& text);

/// g(u, v) = sum_a u_a v_a.
Rational frame_inner(const FrameVector& u, const FrameVector& v);

/// Linear operator on the exterior algebra of R^n over ScalarPoly.
///
/// Basis vectors are subsets S of {1..n} stored as bitmasks (bit j-1 set iff
/// j in S). Storage is by column: each column keeps its nonzero entries
/// sorted by row.
class CliffordOp {
 public:
  struct Entry {
    std::uint32_t row;
    ScalarPoly value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  explicit CliffordOp(Dimension dim);
  static CliffordOp zero(Dimension dim) { return CliffordOp(dim); }
  static CliffordOp identity(Dimension dim);
  static CliffordOp scalar(Dimension dim, const ScalarPoly& s);
  /// Builds from one (row, value) pair per column; value may be zero.
  static CliffordOp monomial_matrix(Dimension dim, std::span<const std::uint32_t> rows,
                                    std::vector<ScalarPoly> values);

  Dimension dim() const { return dim_; }
  std::uint32_t size() const { return dim_.basis_size(); }

  const std::vector<Entry>& column(std::uint32_t col) const { return cols_[col]; }
  /// Entry (row, col); zero when absent.
  ScalarPoly at(std::uint32_t row, std::uint32_t col) const;
  const ScalarPoly* find(std::uint32_t row, std::uint32_t col) const;
  std::size_t nonzeros() const;
  bool is_zero() const;
  /// True when the operator is s * id for some scalar s (including 0).
  bool is_scalar() const;

  CliffordOp& operator+=(const CliffordOp& o);
  CliffordOp& operator-=(const CliffordOp& o);
  CliffordOp& operator*=(const ScalarPoly& s);
  /// this += s * o.
  void add_scaled(const ScalarPoly& s, const CliffordOp& o);

  friend CliffordOp operator+(CliffordOp a, const CliffordOp& b) { return a += b; }
  friend CliffordOp operator-(CliffordOp a, const CliffordOp& b) { return a -= b; }
  friend CliffordOp operator*(CliffordOp a, const ScalarPoly& s) { return a *= s; }
  friend CliffordOp operator*(const ScalarPoly& s, CliffordOp a) { return a *= s; }
  friend CliffordOp operator-(CliffordOp a);
  friend CliffordOp operator*(const CliffordOp& a, const CliffordOp& b);
  friend bool operator==(const CliffordOp& a, const CliffordOp& b);

  /// Substitutes numeric a0, b0 into every entry.
  CliffordOp evaluated(const Rational& a0, const Rational& b0) const;

  /// Row-major list of canonical entry renderings, for debugging.
  std::vector<std::vector<std::string>> to_rows() const;
  /// Canonical one-line fingerprint: "id*(s)" for scalars, else a 64-bit hash.
  std::string fingerprint() const;

 private:
  void check_same_dim(const CliffordOp& o, const char* what) const;

  Dimension dim_;
  std::vector<std::vector<Entry>> cols_;
};

CliffordOp op_mul(const CliffordOp& a, const CliffordOp& b);
ScalarPoly op_trace(const CliffordOp& a);
/// tr(A B) without forming the product.
ScalarPoly op_trace_product(const CliffordOp& a, const CliffordOp& b);

/// Exterior multiplication by e_j^*, j in 1..n.
CliffordOp ext_op(Dimension dim, int j);
/// Interior multiplication (contraction) by e_j, j in 1..n.
CliffordOp int_op(Dimension dim, int j);
/// c(e_j) = eps - iota; anticommutes to -2 delta.
CliffordOp c_op(Dimension dim, int j);
/// c^(e_j) = eps + iota; anticommutes to +2 delta.
CliffordOp hatc_op(Dimension dim, int j);
/// c~(e_j) = a0 eps - b0 iota; anticommutes to -2 a0 b0 delta.
CliffordOp tildec_op(Dimension dim, int j);

enum class CliffordKind { c, hat, tilde };

CliffordOp clifford_op(CliffordKind kind, Dimension dim, int j);
/// sum_eta u_eta op(e_eta).
CliffordOp vector_clifford(CliffordKind kind, const FrameVector& u);

/// Anticommutator AB + BA.
CliffordOp anticommutator(const CliffordOp& a, const CliffordOp& b);

}  // namespace wres
