#pragma once

#include "toric/envelope.hpp"
#include "toric/geometry.hpp"
#include "toric/obstruction.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace toric {

/// g -> E(i)(2i ∫_P g + Σ_t (1-β_t) ∫_{F_t} g) - (2i Vol(P) + Σ_t (1-β_t) Vol(F_t)) Σ_a g(a),
/// the sum running over P ∩ (Z/i)^n. The scale-independent measures are cached.
class MarginFunctional {
 public:
  MarginFunctional(const LatticePolytope& p, std::vector<DivisorSpec> divisors, std::int64_t i);

  std::int64_t scale() const { return scale_; }
  const LatticePolytope& polytope() const { return polytope_; }
  const std::vector<DivisorSpec>& divisors() const { return divisors_; }
  const std::vector<IntPoint>& points() const { return points_; }
  std::size_t lattice_count() const { return points_.size(); }
  /// Q_i, which is the margin of the linear function <c, x> paired with c.
  const RatPoint& q() const { return q_; }
  /// 2i Vol(P) + Σ_t (1-β_t) Vol(F_t).
  const Rational& mass() const { return mass_; }

  /// Evaluates by integrating g over P and the divisor facets.
  /// Throws Error(ScaleMismatch) / Error(DomainMismatch).
  Rational operator()(const PLFunction& g) const;

  /// ω with margin(g) = Σ_k ω_k g(a_k), read off g's cells. For another
  /// concave h, Σ ω_k h(a_k) <= margin(h).
  std::vector<Rational> weights(const PLFunction& g) const;

 private:
  void check(const PLFunction& g) const;

  LatticePolytope polytope_;
  std::vector<DivisorSpec> divisors_;
  std::int64_t scale_;
  std::vector<IntPoint> points_;
  std::vector<Facet> divisor_facets_;
  WeightedMeasures measures_;
  RatPoint q_;
  Rational mass_;
};

Rational margin(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors, std::int64_t i,
                const PLFunction& g);

enum class Decision { Semistable, Unstable, Inconclusive };
enum class SearchMode { Exact, LinearOnly, Sampled };

std::string to_string(Decision d);
std::string to_string(SearchMode m);
/// "exact", "linear", "sampled"; throws Error(InvalidInput) otherwise.
SearchMode parse_search_mode(const std::string& text);

struct StabilityOptions {
  SearchMode mode = SearchMode::LinearOnly;
  std::uint64_t seed = 0;
  std::size_t samples = 256;
  std::size_t max_constraints = 1'000'000;
  std::size_t max_iterations = 5000;
  std::size_t max_exact_dim = 2;
};

struct StabilityVerdict {
  Decision decision = Decision::Inconclusive;
  SearchMode mode = SearchMode::LinearOnly;
  std::int64_t scale = 1;
  RatPoint q;
  /// Concave PL function with negative margin, present iff Unstable.
  std::optional<PLFunction> witness;
  std::optional<Rational> witness_margin;
  /// Exact minimum of the margin over concave value vectors orthogonal to the
  /// affine functions with entries in [-1, 1], and a minimizer.
  std::optional<Rational> margin_min;
  std::optional<std::vector<Rational>> minimizer;
  bool certified = false;
  bool cap_exceeded = false;
  std::size_t cone_constraints = 0;
  std::size_t iterations = 0;
  std::size_t samples = 0;
  std::vector<std::string> warnings;
};

StabilityVerdict decide_semistable(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors,
                                   std::int64_t i, const StabilityOptions& options = {});

/// Linear equalities on a value vector φ indexed by P ∩ (Z/i)^n.
struct LinearEquality {
  std::string label;
  std::vector<Rational> coefficients;
  Rational rhs;
};

struct ConstraintSystem {
  std::int64_t scale = 1;
  std::vector<IntPoint> points;  // scaled, lexicographic
  std::vector<LinearEquality> equalities;

  bool satisfied_by(const std::vector<Rational>& phi) const;
  /// Labels of the violated equalities.
  std::vector<std::string> violations(const std::vector<Rational>& phi) const;
};

/// Equalities cutting out the affine hull of the secondary polytope of iP:
/// Σ φ = (n+1)! Vol(iP) and Σ φ(a) (i a) = (n+1)! ∫_{iP} x.
ConstraintSystem affine_hull_constraints(const LatticePolytope& p, std::int64_t i);

/// The same for the facet F (vectors supported on F ∩ (Z/i)^n, volumes in dσ).
ConstraintSystem affine_hull_constraints_facet(const LatticePolytope& p, std::size_t facet_index, std::int64_t i);

/// GKZ vector of g's subdivision: φ(a) = Σ_{cells ∋ a} normalized volume in iP.
std::vector<Rational> gkz_vector(const PLFunction& g);
/// Facet analogue from the faces of g's cells lying in F.
std::vector<Rational> facet_gkz_vector(const Facet& f, const PLFunction& g);

/// Mass and moment equalities of 2 n! Ch(iP) + Σ_t (1-β_t)(n+1)! Ch(F_t).
ConstraintSystem minkowski_affine_hull(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors,
                                       std::int64_t i);

struct BalancedTarget {
  /// n!(n+1)!/E(i) (2 i^n Vol(P) + Σ_t (1-β_t) i^{n-1} Vol(F_t)).
  Rational scalar;
  std::vector<Rational> target;  // scalar at every lattice point
  ConstraintSystem minkowski;
  bool in_minkowski_hull = false;
};

BalancedTarget balanced_target(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors,
                                           std::int64_t i);

}  // namespace toric
