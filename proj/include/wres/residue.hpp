#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wres/clifford.hpp"
#include "wres/curvature.hpp"
#include "wres/scalar.hpp"
#include "wres/symbol.hpp"

namespace wres {

/// Exact density core * (a0 b0)^ab_power * Vol(S^{n-1}).
///
/// Negative powers of a0 b0 stay in the exponent tag; the polynomial core
/// never carries a common a0 b0 factor after normalize().
struct FunctionalDensity {
  ScalarPoly core;
  int ab_power = 0;

  FunctionalDensity normalized() const;
  bool is_zero() const { return core.is_zero(); }
  bool is_real() const { return core.is_real(); }
  /// e.g. "a0^2*b0^2*(8)" or "(-16) * (a0*b0)^-1"; the Vol unit is implicit.
  std::string to_string() const;

  friend FunctionalDensity operator+(const FunctionalDensity& a, const FunctionalDensity& b);
  /// Mathematical equality (exponent tags are aligned first).
  friend bool operator==(const FunctionalDensity& a, const FunctionalDensity& b);
};

/// Vol(S^{n-1}) = 2 pi^m / Gamma(m) as a double, for reports only.
double sphere_volume(Dimension dim);

/// Sum over the terms of the order -n piece of s of tr(coeff) times the
/// sphere average of the xi-monomial (the norm factor is 1 on the sphere).
/// Throws std::domain_error when a term still depends on x or when the
/// order is unknown.
FunctionalDensity integrate_density(const SymbolExpansion& s);

/// Same as integrate_density(compose at x = 0) restricted to the given slots,
/// but traces each operator product directly without materializing it.
ScalarPoly integrate_composition(const SymbolExpansion& a, const SymbolExpansion& b, int target,
                                 const std::function<bool(const ComposeSlot&)>& slot_filter = {});

enum class PartId {
  I1A, I1B, I1, I2, I3A, I3B, I3C, I3D, I3E, I3, I4A, I4B, I4C, I4, I5, I6,
  II1, II2, II3, II4, II5,
};

/// Every part in report order.
const std::vector<PartId>& all_parts();
/// Leaf parts (no group totals).
const std::vector<PartId>& leaf_parts();
/// Parts whose closed form is identically zero.
const std::vector<PartId>& zero_parts();
std::string part_name(PartId id);
std::optional<PartId> parse_part(const std::string& name);

struct PartReport {
  PartId id;
  FunctionalDensity computed;
  FunctionalDensity expected;
  bool match = false;
  bool real = false;
};

/// Curvature, vectors and every cached symbol needed by the parts.
class ResidueContext {
 public:
  ResidueContext(const RiemannTensor& r, const FrameVector& u, const FrameVector& v);
  /// Reuses curvature operators built for the same tensor.
  ResidueContext(std::shared_ptr<const CurvatureOps> ops, const FrameVector& u, const FrameVector& v);

  Dimension dim() const { return ops_->dim; }
  const RiemannTensor& riemann() const { return ops_->riemann; }
  const FrameVector& u() const { return u_; }
  const FrameVector& v() const { return v_; }
  const CurvatureOps& ops() const { return *ops_; }
  std::shared_ptr<const CurvatureOps> shared_ops() const { return ops_; }

  PartReport part(PartId id);
  /// Closed-form value of a part.
  FunctionalDensity expected(PartId id) const;
  /// The materialized composition behind a part, for diagnostics.
  SymbolExpansion part_symbol(PartId id);

  /// Wres density of c~(u) c~(v) D~^{-2m}.
  FunctionalDensity metric();
  FunctionalDensity metric_expected() const;
  /// Part I core without prefactor (full composition).
  FunctionalDensity n1_core();
  /// Part II core without prefactor (full composition).
  FunctionalDensity n2_core();
  FunctionalDensity i_sum_expected_value() const;
  FunctionalDensity ii_sum_expected_value() const;
  /// (a0 b0)^{-m} n1_core + (a0 b0)^{-m+1} n2_core.
  FunctionalDensity einstein();
  FunctionalDensity einstein_expected() const;

 private:
  const SymbolExpansion& sigma_pq(unsigned q_families);
  const SymbolExpansion& resolvent(int k, unsigned families);
  const SymbolExpansion& uv_symbol();

  FrameVector u_, v_;
  std::shared_ptr<const CurvatureOps> ops_;
  Rational s_, ric_uv_, g_uv_;
  std::map<unsigned, SymbolExpansion> pq_cache_;
  std::map<std::pair<int, unsigned>, SymbolExpansion> resolvent_cache_;
  std::optional<SymbolExpansion> uv_;
  std::optional<FunctionalDensity> n1_, n2_;
};

PartReport compute_part(PartId id, const RiemannTensor& r, const FrameVector& u, const FrameVector& v);
FunctionalDensity metric_functional(const RiemannTensor& r, const FrameVector& u, const FrameVector& v);

struct EinsteinResult {
  FunctionalDensity n1;  // with its (a0 b0)^{-m} prefactor
  FunctionalDensity n2;  // with its (a0 b0)^{-m+1} prefactor
  FunctionalDensity total;
  FunctionalDensity expected;
  bool match = false;
  std::vector<PartReport> parts;
};

EinsteinResult einstein_functional(const RiemannTensor& r, const FrameVector& u, const FrameVector& v,
                                   bool with_parts = true);

/// Outcome of every check for one (R, u, v) instance.
struct InstanceReport {
  int n = 0;
  std::uint64_t seed = 0;
  std::string curvature;  // "random", "constant", "flat" or a file name
  std::string u, v;
  std::vector<PartReport> parts;
  FunctionalDensity i_sum, i_sum_expected, ii_sum, ii_sum_expected;
  FunctionalDensity metric, metric_expected, einstein, einstein_expected;
  bool i_sum_match = false, ii_sum_match = false, metric_match = false, einstein_match = false;
  bool n1_split_match = false;  // full composition equals the sum of its slots
  bool einstein_symmetric = false;
  bool all_real = false;
  std::string diagnostic;  // dump of the first failing part, empty when all pass

  bool all_match() const;
};

InstanceReport verify_instance(const RiemannTensor& r, const FrameVector& u, const FrameVector& v);

enum class CurvatureSource { random, constant, flat, file };

struct VerifyConfig {
  Dimension dim{4};
  std::vector<std::uint64_t> seeds;
  CurvatureSource source = CurvatureSource::random;
  std::optional<RiemannTensor> file_tensor;
  std::string file_name;
  /// Fixed vectors; drawn per seed when absent.
  std::optional<FrameVector> u, v;
  unsigned threads = 0;  // 0 picks the hardware concurrency
};

struct VerifyReport {
  std::vector<InstanceReport> instances;
  bool all_match() const;
};

/// Runs verify_instance for every seed. Instances are independent and may
/// run on several threads; the order of the result follows config.seeds.
VerifyReport verify_all(const VerifyConfig& config);

/// Builds the curvature tensor for one seed of a config.
RiemannTensor config_curvature(const VerifyConfig& config, std::uint64_t seed);

/// [[deg_a0, deg_b0, re_num, re_den, im_num, im_den], ...]
std::string poly_to_json(const ScalarPoly& p);

/// Canonical JSON (sorted keys, two-space indent).
std::string report_to_json(const VerifyReport& report);
std::string instance_to_json(const InstanceReport& inst);

}  // namespace wres
