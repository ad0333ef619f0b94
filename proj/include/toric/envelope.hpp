#pragma once

#include "toric/geometry.hpp"
#include "toric/rational.hpp"
#include "toric/triangulation.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace toric {

/// x -> <gradient, x> + constant, in the polytope's own coordinates.
struct AffineForm {
  RatPoint gradient;
  Rational constant;

  Rational operator()(const RatPoint& x) const { return dot(gradient, x) + constant; }
  friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

/// Values on P ∩ (Z/scale)^n. Points are stored scaled (b = scale * a) in
/// lexicographic order, matching scaled_lattice_points.
struct LatticeFunction {
  std::int64_t scale = 1;
  std::vector<IntPoint> points;
  std::vector<Rational> values;

  std::size_t size() const { return points.size(); }
  RatPoint point(std::size_t k) const { return scaled_point(points[k], scale); }

  static LatticeFunction from(const LatticePolytope& p, std::int64_t scale,
                              const std::function<Rational(const RatPoint&)>& f);
  static LatticeFunction affine(const LatticePolytope& p, std::int64_t scale, const AffineForm& form);
};

struct PLCell {
  tri::Simplex vertices;  // indices into the lattice point list
  AffineForm form;
};

/// Concave piecewise-linear function on P induced by lattice values. The
/// stored values are the function's own values at every lattice point and the
/// cells are a simplicial subdivision of P on which it is affine.
class PLFunction {
 public:
  std::int64_t scale() const { return values_.scale; }
  const std::vector<IntPoint>& points() const { return values_.points; }
  const std::vector<Rational>& values() const { return values_.values; }
  const LatticeFunction& lattice_values() const { return values_; }
  const std::vector<PLCell>& cells() const { return cells_; }
  std::size_t dim() const { return values_.points.front().size(); }

  /// Value at any x in P (minimum of the cell forms, valid by concavity).
  Rational evaluate(const RatPoint& x) const;

  /// Sum over the lattice of g(a).
  Rational lattice_sum() const;

  /// c * g for c > 0; cells are unchanged.
  PLFunction scaled(const Rational& c) const;

 private:
  friend PLFunction concave_envelope(const LatticeFunction&);
  LatticeFunction values_;
  std::vector<PLCell> cells_;
};

/// g_φ: upper hull of the lifted points {(a, φ(a))}, flat regions triangulated
/// by lexicographic placing.
PLFunction concave_envelope(const LatticeFunction& phi);

/// Whether φ equals its concave envelope at every lattice point.
bool is_concave(const LatticeFunction& phi);

/// v(target) >= Σ_j weights[j] * v(support[j]).
struct ConcavityConstraint {
  std::size_t target = 0;
  std::vector<std::size_t> support;
  std::vector<Rational> weights;

  bool satisfied_by(const std::vector<Rational>& v) const;
};

struct ConcavityCone {
  std::int64_t scale = 1;
  std::vector<IntPoint> points;
  std::vector<ConcavityConstraint> constraints;

  bool contains(const std::vector<Rational>& v) const;
};

/// Finite description of the lattice value vectors that equal their own
/// concave envelope. Emits v(a) >= Σ λ_j v(a_j) for affinely independent
/// supports whose hull contains a in its relative interior and no other
/// lattice point; that subset is already complete. Throws Error(TooLarge)
/// past `max_constraints`.
ConcavityCone concavity_cone(const LatticePolytope& p, std::int64_t scale,
                             std::size_t max_constraints = 1'000'000);

}  // namespace toric
