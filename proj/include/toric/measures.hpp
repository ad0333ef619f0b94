#pragma once

#include "toric/envelope.hpp"
#include "toric/geometry.hpp"
#include "toric/triangulation.hpp"

#include <vector>

// Exact measures on P and ∂P. dν is Lebesgue measure on R^n; dσ on a facet is
// Lebesgue measure in a unimodular chart of the facet lattice, which makes
// dh_F ∧ dσ = dν and keeps everything rational. Zero-dimensional facets carry
// unit point mass.
namespace toric {

struct RegionMeasure {
  Rational volume;
  RatPoint moment;  // ∫ x
};

struct FacetMeasure {
  std::size_t index = 0;
  Rational volume;
  RatPoint moment;
};

struct MeasureReport {
  Rational volume;
  RatPoint moment;
  std::vector<FacetMeasure> facets;
  Rational boundary_volume;
};

/// Volume and first moment of conv(points) ⊂ R^d (full-dimensional, integer points).
RegionMeasure region_measure(const std::vector<IntPoint>& points, tri::Method method = tri::Method::Placing);

Rational volume(const LatticePolytope& p, tri::Method method = tri::Method::Placing);
RatPoint moment(const LatticePolytope& p, tri::Method method = tri::Method::Placing);

Rational facet_volume(const Facet& f, tri::Method method = tri::Method::Placing);
RatPoint facet_moment(const Facet& f, tri::Method method = tri::Method::Placing);
FacetMeasure facet_measure(const Facet& f, tri::Method method = tri::Method::Placing);

Rational boundary_volume(const LatticePolytope& p);

MeasureReport measure_report(const LatticePolytope& p, tri::Method method = tri::Method::Placing);

/// ∫_P g dν. Throws Error(DomainMismatch) if g lives on another lattice.
Rational integrate_pl(const LatticePolytope& p, const PLFunction& g);
/// ∫_F g dσ, integrating in chart coordinates.
Rational integrate_pl_facet(const Facet& f, const PLFunction& g);
/// ∫_∂P g dσ = Σ_F ∫_F g dσ.
Rational integrate_pl_boundary(const LatticePolytope& p, const PLFunction& g);

}  // namespace toric
