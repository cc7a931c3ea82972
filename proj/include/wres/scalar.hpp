#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace wres {

using Rational = mpq_class;

/// Builds a canonical rational num/den. Throws std::invalid_argument on den == 0.
Rational make_rational(long num, long den = 1);

/// Parses "p", "-p/q" or "p/q" into a canonical rational.
Rational parse_rational(const std::string& text);

/// Complex number with exact rational parts.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit by intent
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long r) : re(r) {}  // NOLINT

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator*=(const Rational& q);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  /// "q", "q*i" or "re+im*i" with canonical reduced fractions.
  std::string to_string() const;
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

/// Exponent pair of a monomial a0^deg_a0 * b0^deg_b0.
struct Degree {
  std::uint16_t a0 = 0;
  std::uint16_t b0 = 0;
  friend bool operator==(const Degree&, const Degree&) = default;
};

/// Polynomial in the formal parameters a0, b0 with Gaussian-rational
/// coefficients.
///
/// Terms are kept sorted by (deg_a0, deg_b0) descending with no zero
/// coefficients, so structural equality is mathematical equality.
class ScalarPoly {
 public:
  using Term = std::pair<Degree, GaussianRational>;

  ScalarPoly() = default;
  ScalarPoly(const GaussianRational& c);  // NOLINT: constants promote
  ScalarPoly(const Rational& c) : ScalarPoly(GaussianRational(c)) {}  // NOLINT
  ScalarPoly(long c) : ScalarPoly(GaussianRational(c)) {}  // NOLINT

  static ScalarPoly monomial(Degree d, GaussianRational c);
  static ScalarPoly a0() { return monomial({1, 0}, 1); }
  static ScalarPoly b0() { return monomial({0, 1}, 1); }
  static ScalarPoly i() { return ScalarPoly(GaussianRational::i()); }
  /// Builds from arbitrary (possibly repeated, possibly zero) terms.
  static ScalarPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_real() const;
  /// True iff the polynomial is a constant (degree 0 or zero).
  bool is_constant() const;
  /// Coefficient of a0^d.a0 b0^d.b0 (zero when absent).
  GaussianRational coeff(Degree d) const;

  ScalarPoly& operator+=(const ScalarPoly& o);
  ScalarPoly& operator-=(const ScalarPoly& o);
  ScalarPoly& operator*=(const ScalarPoly& o);
  ScalarPoly& operator*=(const GaussianRational& c);
  /// this += x * y without materializing x * y as a separate polynomial.
  void add_product(const ScalarPoly& x, const ScalarPoly& y);
  /// this += c * x.
  void add_scaled(const GaussianRational& c, const ScalarPoly& x);

  friend ScalarPoly operator+(ScalarPoly a, const ScalarPoly& b) { return a += b; }
  friend ScalarPoly operator-(ScalarPoly a, const ScalarPoly& b) { return a -= b; }
  friend ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b);
  friend ScalarPoly operator*(ScalarPoly a, const GaussianRational& c) { return a *= c; }
  friend ScalarPoly operator*(const GaussianRational& c, ScalarPoly a) { return a *= c; }
  friend ScalarPoly operator-(ScalarPoly a);

  friend bool operator==(const ScalarPoly& a, const ScalarPoly& b) { return a.terms_ == b.terms_; }

  /// Largest k with (a0 b0)^k dividing every term; 0 for the zero polynomial.
  int common_ab_power() const;
  /// Divides by (a0 b0)^k. Throws std::domain_error if not exact.
  ScalarPoly divide_ab_power(int k) const;
  /// Multiplies by (a0 b0)^k, k >= 0.
  ScalarPoly multiply_ab_power(int k) const;

  /// Canonical text form, e.g. "a0^2*b0^2*(-1/6) + a0*b0*(1/3)"; "0" when zero.
  std::string to_string() const;

 private:
  void canonicalize();
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const ScalarPoly& p);

GaussianRational poly_eval(const ScalarPoly& p, const Rational& a0, const Rational& b0);

inline ScalarPoly poly_add(const ScalarPoly& p, const ScalarPoly& q) { return p + q; }
inline ScalarPoly poly_mul(const ScalarPoly& p, const ScalarPoly& q) { return p * q; }
inline bool poly_is_real(const ScalarPoly& p) { return p.is_real(); }

}  // namespace wres
