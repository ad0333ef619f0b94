#pragma once

#include "toric/geometry.hpp"
#include "toric/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toric {

/// Divisor (1 - beta) D_F for the facet at `facet` (index into P.halfspaces()).
struct DivisorSpec {
  std::size_t facet = 0;
  Rational beta = 1;

  Rational weight() const { return 1 - beta; }
  friend bool operator==(const DivisorSpec&, const DivisorSpec&) = default;
};

/// Checks 0 < beta <= 1, distinct facets, valid indices (Error BadFacetIndex / InvalidInput).
void validate_divisors(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors);

/// The scale-independent ingredients of Q_i and of the margin.
struct WeightedMeasures {
  Rational volume;          // Vol(P)
  RatPoint moment;          // ∫_P x dν
  Rational divisor_volume;  // Σ_t (1 - β_t) Vol(F_t)
  RatPoint divisor_moment;  // Σ_t (1 - β_t) ∫_{F_t} x dσ
  Rational boundary_volume;
};

WeightedMeasures weighted_measures(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors);

/// Q_i = E(i)(2i ∫x + Σ(1-β_t)∫_{F_t} x) - (2i Vol + Σ(1-β_t)Vol(F_t)) Σ_a a.
RatPoint q_vector(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors, std::int64_t i);

/// E_P(i), interpolated through E(0) = 1 and i = 1..n+1, checked at i = n+2.
Polynomial ehrhart_polynomial(const LatticePolytope& p);

/// S(i) = Σ_{a ∈ P∩(Z/i)^n} a. Interpolates the integer sums W(i) = i S(i) with
/// W(0) = 0 and i = 1..n+3, checks i = n+4, then divides by i.
VectorPolynomial lattice_sum_polynomial(const LatticePolytope& p);

/// Q as a polynomial in i, checked against q_vector at i = 1..n+3.
VectorPolynomial q_polynomial(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors);

struct AsymptoticVerdict {
  VectorPolynomial q;
  bool vanishes = false;
  std::optional<std::int64_t> obstructed_at;  // smallest i >= 1 with Q_i != 0
  std::string verdict;  // "asymptotically Chow unstable" or "obstruction vanishes"
  std::string detail;
};

AsymptoticVerdict asymptotic_verdict(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors);

}  // namespace toric
