#include "toric/measures.hpp"

#include "toric/error.hpp"

namespace toric {

namespace {

Rational power(std::int64_t base, std::size_t exp) {
  Integer r = 1;
  for (std::size_t k = 0; k < exp; ++k) r *= base;
  return Rational(r);
}

void check_domain(const LatticePolytope& p, const PLFunction& g) {
  if (g.dim() != p.dim() || g.points() != scaled_lattice_points(p, g.scale())) {
    throw Error(ErrorKind::DomainMismatch, "PL function at scale " + std::to_string(g.scale()) +
                                               " is not defined on this polytope's lattice");
  }
}

}  // namespace

RegionMeasure region_measure(const std::vector<IntPoint>& points, tri::Method method) {
  const std::size_t d = points.front().size();
  RegionMeasure m{0, zero_point(d)};
  for (const auto& s : tri::triangulate(points, method)) {
    const Rational vol = tri::simplex_volume(points, s);
    m.volume += vol;
    const Rational w = vol / static_cast<unsigned>(s.size());
    for (auto k : s)
      for (std::size_t c = 0; c < d; ++c) m.moment[c] += w * points[k][c];
  }
  return m;
}

Rational volume(const LatticePolytope& p, tri::Method method) { return region_measure(p.vertices(), method).volume; }

RatPoint moment(const LatticePolytope& p, tri::Method method) { return region_measure(p.vertices(), method).moment; }

FacetMeasure facet_measure(const Facet& f, tri::Method method) {
  std::vector<IntPoint> chart_points;
  for (const auto& v : f.vertices) chart_points.push_back(f.chart.coordinates(v));
  const RegionMeasure local = region_measure(chart_points, method);
  FacetMeasure out{f.index, local.volume, {}};
  out.moment = to_rat_point(f.chart.origin);
  for (auto& x : out.moment) x *= local.volume;
  for (std::size_t j = 0; j < f.chart.basis.size(); ++j) add_scaled(out.moment, to_rat_point(f.chart.basis[j]), local.moment[j]);
  return out;
}

Rational facet_volume(const Facet& f, tri::Method method) { return facet_measure(f, method).volume; }

RatPoint facet_moment(const Facet& f, tri::Method method) { return facet_measure(f, method).moment; }

Rational boundary_volume(const LatticePolytope& p) {
  Rational s = 0;
  for (const auto& f : facets(p)) s += facet_volume(f);
  return s;
}

MeasureReport measure_report(const LatticePolytope& p, tri::Method method) {
  MeasureReport r;
  const auto region = region_measure(p.vertices(), method);
  r.volume = region.volume;
  r.moment = region.moment;
  r.boundary_volume = 0;
  for (const auto& f : facets(p)) {
    r.facets.push_back(facet_measure(f, method));
    r.boundary_volume += r.facets.back().volume;
  }
  return r;
}

Rational integrate_pl(const LatticePolytope& p, const PLFunction& g) {
  check_domain(p, g);
  Rational total = 0;
  for (const auto& cell : g.cells()) {
    Rational avg = 0;
    for (auto k : cell.vertices) avg += g.values()[k];
    total += tri::simplex_volume(g.points(), cell.vertices) * avg / static_cast<unsigned>(cell.vertices.size());
  }
  return total / power(g.scale(), p.dim());
}

Rational integrate_pl_facet(const Facet& f, const PLFunction& g) {
  const std::size_t n = f.halfspace.normal.size();
  if (g.dim() != n) throw Error(ErrorKind::DomainMismatch, "PL function dimension does not match the facet");
  const std::int64_t i = g.scale();
  Rational total = 0;
  // Faces of the cells lying in F triangulate F.
  for (const auto& cell : g.cells()) {
    std::vector<std::size_t> on_facet;
    for (auto k : cell.vertices)
      if (f.halfspace.slack(g.points()[k], i) == 0) on_facet.push_back(k);
    if (on_facet.size() != n) continue;
    std::vector<IntPoint> chart_points;
    Rational avg = 0;
    for (auto k : on_facet) {
      chart_points.push_back(f.chart.coordinates(g.points()[k], i));
      avg += g.values()[k];
    }
    tri::Simplex all(on_facet.size());
    for (std::size_t t = 0; t < all.size(); ++t) all[t] = t;
    total += tri::simplex_volume(chart_points, all) * avg / static_cast<unsigned>(n);
  }
  return total / power(i, n - 1);
}

Rational integrate_pl_boundary(const LatticePolytope& p, const PLFunction& g) {
  check_domain(p, g);
  Rational s = 0;
  for (const auto& f : facets(p)) s += integrate_pl_facet(f, g);
  return s;
}

}  // namespace toric
