#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wres/clifford.hpp"
#include "wres/scalar.hpp"

namespace wres {

/// Riemann curvature tensor at a point, in an orthonormal frame.
///
/// Convention: R(i,j,k,l) with R(i,j,i,j) the sectional curvature of the
/// (e_i, e_j) plane, Ric(a,b) = sum_p R(a,p,b,p) and s = sum_a Ric(a,a).
/// Indices are 1-based.
class RiemannTensor {
 public:
  /// The zero (flat) tensor.
  explicit RiemannTensor(Dimension dim);

  static RiemannTensor flat(Dimension dim) { return RiemannTensor(dim); }
  /// R_ijkl = delta_ik delta_jl - delta_il delta_jk (unit round sphere).
  static RiemannTensor constant_curvature(Dimension dim);
  /// Projects an arbitrary rank-4 array onto the space of curvature tensors.
  /// raw is indexed ((i*n + j)*n + k)*n + l with 0-based indices.
  static RiemannTensor project(Dimension dim, const std::vector<Rational>& raw);

  Dimension dim() const { return dim_; }
  const Rational& operator()(int i, int j, int k, int l) const { return r_[index(i, j, k, l)]; }
  void set(int i, int j, int k, int l, Rational v) { r_[index(i, j, k, l)] = std::move(v); }

  friend bool operator==(const RiemannTensor&, const RiemannTensor&) = default;

 private:
  std::size_t index(int i, int j, int k, int l) const;

  Dimension dim_;
  std::vector<Rational> r_;
};

/// First violated curvature symmetry, if any.
struct SymmetryViolation {
  std::string symmetry;  // e.g. "R_ijkl = -R_jikl"
  int i, j, k, l;        // 1-based offending index tuple
  std::string to_string() const;
};

std::optional<SymmetryViolation> check_symmetries(const RiemannTensor& r);

/// Deterministic random curvature tensor: small random rationals
/// (|num| <= 9, den <= 4), then antisymmetrization in (i,j) and (k,l),
/// pair-exchange symmetrization and removal of one third of the cyclic sum.
RiemannTensor random_riemann(Dimension dim, std::uint64_t seed);

/// Deterministic random frame vector with the same small-rational law.
/// stream distinguishes several vectors drawn for one seed.
FrameVector random_frame_vector(Dimension dim, std::uint64_t seed, std::uint64_t stream);

struct CurvatureContractions {
  std::vector<std::vector<Rational>> ricci;  // 0-based n x n
  Rational scalar_curv;
};

CurvatureContractions contract(const RiemannTensor& r);

/// Ric(u, v) = sum_{a,b} u_a v_b Ric_ab.
Rational ricci_bilinear(const CurvatureContractions& c, const FrameVector& u, const FrameVector& v);

/// G(u, v) = Ric(u, v) - s g(u, v) / 2.
Rational einstein_bilinear(const RiemannTensor& r, const FrameVector& u, const FrameVector& v);

/// {"n": n, "entries": [[i,j,k,l,num,den], ...]} with nonzero entries only.
std::string riemann_to_json(const RiemannTensor& r);
/// Parses the JSON form and re-validates every symmetry.
/// Throws std::invalid_argument naming the violated symmetry and indices.
RiemannTensor riemann_from_json(const std::string& text);

}  // namespace wres
