#pragma once

#include "toric/envelope.hpp"
#include "toric/geometry.hpp"
#include "toric/obstruction.hpp"
#include "toric/polynomial.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace toric {

/// Convex piecewise-linear h on P with creases on the lattice (Z/k)^n, stored
/// as the concave envelope of -h.
class ConvexPLFunction {
 public:
  /// Throws Error(NotConvex) unless the values are those of a convex function.
  static ConvexPLFunction from_values(const LatticeFunction& h);
  static ConvexPLFunction from(const LatticePolytope& p, std::int64_t k,
                               const std::function<Rational(const RatPoint&)>& fn);
  static ConvexPLFunction affine(const LatticePolytope& p, const AffineForm& form);

  std::int64_t scale() const { return negated_.scale(); }
  Rational operator()(const RatPoint& x) const { return -negated_.evaluate(x); }
  const PLFunction& negated() const { return negated_; }
  std::vector<Rational> values() const;
  Rational max_value() const;
  /// ceil(max h), so that R - h >= 0 on P.
  Integer ceiling() const;

 private:
  explicit ConvexPLFunction(PLFunction negated) : negated_(std::move(negated)) {}
  PLFunction negated_;
};

/// (Vol ∂P / Vol P) ∫_P h - ∫_∂P h + Σ_t (1-β_t)(∫_{F_t} h - (Vol F_t / Vol P) ∫_P h).
Rational log_futaki_toric(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors,
                          const ConvexPLFunction& h);

/// Leading terms of d_j = #P∩(Z/j)^n ~ a0 j^n + a1 j^{n-1}, w_j = Σ (R-h)(a) ~ b0 j^n + b1 j^{n-1},
/// and per divisor d̃_j ~ ã0 j^{n-1}, w̃_j ~ b̃0 j^{n-1} (sums over F_t ∩ (Z/j)^n), j ∈ kZ.
struct ExpansionCoefficients {
  Integer ceiling;  // R
  Rational a0, a1, b0, b1;
  std::vector<Rational> a0_tilde, b0_tilde;  // one per divisor
};

/// Coefficients from the measures, cross-checked against polynomials
/// interpolated from lattice sums (Error(VerificationFailed) on disagreement).
ExpansionCoefficients expansion_coefficients(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors,
                                             const ConvexPLFunction& h);

/// The leading terms evaluated at k for one facet F:
/// d = k^n a0 + k^{n-1} a1, w = k^{n+1} b0 + k^n b1, d̃ = k^{n-1} ã0, w̃ = k^n b̃0.
struct ExpansionTerms {
  Rational d, w, d_tilde, w_tilde;
};

ExpansionTerms expansion_terms(const LatticePolytope& p, std::size_t facet_index, const ConvexPLFunction& h,
                               std::int64_t k);

/// (2(a1 b0 - a0 b1) - Σ_t (1-β_t)(ã0_t b0 - a0 b̃0_t)) / a0.
Rational futaki_from_expansions(const Rational& a0, const Rational& a1, const Rational& b0, const Rational& b1);
Rational futaki_from_expansions(const Rational& a0, const Rational& a1, const Rational& b0, const Rational& b1,
                                const Rational& a0_tilde, const Rational& b0_tilde, const Rational& beta);
Rational futaki_from_expansions(const ExpansionCoefficients& c, const std::vector<DivisorSpec>& divisors);

struct ConsistencyReport {
  std::int64_t k = 1;
  Rational log_futaki;        // LF(h)
  Rational expansion_futaki;  // equals -LF(h)
  std::vector<std::int64_t> scales;
  std::vector<Rational> margins;  // margin of -h at scale i k
  Polynomial margin_polynomial;   // in i, from Ehrhart and lattice-sum polynomials
  /// Interpolation through all computed margins (present with at least n+1 scales).
  std::optional<Polynomial> fitted_polynomial;
  Rational leading_ratio;         // [i^n] / (k^n Vol P), equals -LF(h)
  bool consistent = false;
  /// LF(h) > 0 and the margin of -h is negative for all large i.
  bool implies_instability = false;
};

/// Throws Error(CreaseMismatch) unless k is a multiple of h's crease scale.
ConsistencyReport asymptotic_consistency_check(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors,
                                               const ConvexPLFunction& h, std::int64_t k,
                                               const std::vector<std::int64_t>& i_list);

}  // namespace toric
