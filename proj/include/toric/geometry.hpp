#pragma once

#include "toric/rational.hpp"

#include <cstdint>
#include <vector>

namespace toric {

/// Closed halfspace {x : <normal, x> + offset >= 0}.
struct HalfSpace {
  IntPoint normal;
  std::int64_t offset = 0;

  /// <normal, p> + scale * offset, i.e. the slack of p / scale scaled by `scale`.
  std::int64_t slack(const IntPoint& p, std::int64_t scale = 1) const;

  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
  friend auto operator<=>(const HalfSpace&, const HalfSpace&) = default;
};

/// Full-dimensional integral polytope with matching H- and V-representations.
/// Only constructible through vertices_from_halfspaces / hull_of_vertices,
/// which establish the invariants.
class LatticePolytope {
 public:
  std::size_t dim() const { return dim_; }
  const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }
  /// Sorted lexicographically.
  const std::vector<IntPoint>& vertices() const { return vertices_; }
  std::size_t facet_count() const { return halfspaces_.size(); }

  /// Whether p / scale lies in the polytope.
  bool contains(const IntPoint& p, std::int64_t scale = 1) const;

  friend bool operator==(const LatticePolytope&, const LatticePolytope&) = default;

 private:
  friend LatticePolytope vertices_from_halfspaces(const std::vector<HalfSpace>&, std::size_t);
  friend LatticePolytope hull_of_vertices(const std::vector<IntPoint>&);
  friend LatticePolytope scale(const LatticePolytope&, std::int64_t);

  std::size_t dim_ = 0;
  std::vector<HalfSpace> halfspaces_;
  std::vector<IntPoint> vertices_;
};

/// Builds the polytope of an H-representation. Redundant and duplicate
/// halfspaces are dropped; surviving facets keep their input order, normals
/// are made primitive. Errors: Empty, Unbounded, LowDimensional,
/// NonIntegralVertex, InvalidInput (malformed normals).
LatticePolytope vertices_from_halfspaces(const std::vector<HalfSpace>& halfspaces, std::size_t dim);

/// Convex hull of integer points; facets sorted lexicographically by (normal, offset).
LatticePolytope hull_of_vertices(const std::vector<IntPoint>& points);

/// The dilation factor * P.
LatticePolytope scale(const LatticePolytope& p, std::int64_t factor);

/// Affine unimodular parameterization t -> origin + sum_j t_j basis[j] of a
/// facet's affine lattice.
struct LatticeChart {
  IntPoint origin;
  std::vector<IntPoint> basis;

  std::size_t chart_dim() const { return basis.size(); }
  IntPoint apply(const IntPoint& t) const;
  RatPoint apply(const RatPoint& t) const;
  /// Chart coordinates of a point p / scale on the facet hyperplane, scaled by `scale`.
  IntPoint coordinates(const IntPoint& p, std::int64_t scale = 1) const;
};

struct Facet {
  std::size_t index = 0;
  HalfSpace halfspace;
  std::vector<IntPoint> vertices;  // sorted
  LatticeChart chart;
};

/// Facet `index` (position in P.halfspaces()). Throws Error(BadIndex).
Facet facet(const LatticePolytope& p, std::size_t index);
std::vector<Facet> facets(const LatticePolytope& p);

struct DelzantFailure {
  IntPoint vertex;
  std::vector<IntPoint> edge_directions;
  Integer determinant;  // 0 when the vertex is not simple
};

struct DelzantReport {
  bool is_delzant = true;
  std::vector<DelzantFailure> failures;
};

/// Smoothness test: at every vertex the primitive edge directions form a Z-basis.
DelzantReport is_delzant(const LatticePolytope& p);

/// P ∩ (Z/scale)^n as integer points b = scale * a, sorted lexicographically.
std::vector<IntPoint> scaled_lattice_points(const LatticePolytope& p, std::int64_t scale);

/// P ∩ (Z/scale)^n as rational points, sorted lexicographically.
std::vector<RatPoint> lattice_points(const LatticePolytope& p, std::int64_t scale);

/// E_P(i) = #(P ∩ (Z/i)^n).
std::size_t lattice_count(const LatticePolytope& p, std::int64_t scale);

}  // namespace toric
