#include "toric/geometry.hpp"

#include "toric/dd.hpp"
#include "toric/error.hpp"
#include "toric/linalg.hpp"

#include <algorithm>

namespace toric {

std::int64_t HalfSpace::slack(const IntPoint& p, std::int64_t scale) const {
  std::int64_t s = offset * scale;
  for (std::size_t k = 0; k < normal.size(); ++k) s += normal[k] * p[k];
  return s;
}

bool LatticePolytope::contains(const IntPoint& p, std::int64_t scale) const {
  return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                     [&](const HalfSpace& h) { return h.slack(p, scale) >= 0; });
}

namespace {

std::vector<std::size_t> tight_vertices(const HalfSpace& h, const std::vector<IntPoint>& vertices) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < vertices.size(); ++k)
    if (h.slack(vertices[k]) == 0) out.push_back(k);
  return out;
}

linalg::IntMatrix select(const std::vector<IntPoint>& pts, const std::vector<std::size_t>& idx) {
  linalg::IntMatrix out;
  for (auto k : idx) out.push_back(pts[k]);
  return out;
}

HalfSpace normalized(const HalfSpace& h) {
  std::int64_t g = 0;
  for (auto x : h.normal) g = linalg::gcd(g, x);
  HalfSpace out = h;
  if (g > 1) {
    for (auto& x : out.normal) x /= g;
    out.offset /= g;  // exact once a lattice vertex lies on the hyperplane
  }
  return out;
}

void validate_normals(const std::vector<HalfSpace>& halfspaces, std::size_t dim) {
  if (dim == 0) throw Error(ErrorKind::InvalidInput, "dimension must be positive");
  if (halfspaces.empty()) throw Error(ErrorKind::Unbounded, "no halfspaces given");
  for (std::size_t k = 0; k < halfspaces.size(); ++k) {
    const auto& n = halfspaces[k].normal;
    if (n.size() != dim) {
      throw Error(ErrorKind::InvalidInput, "halfspaces[" + std::to_string(k) + "].normal has length " +
                                               std::to_string(n.size()) + ", expected " +
                                               std::to_string(dim));
    }
    if (std::all_of(n.begin(), n.end(), [](auto x) { return x == 0; })) {
      throw Error(ErrorKind::InvalidInput, "halfspaces[" + std::to_string(k) + "].normal is zero");
    }
  }
}

}  // namespace

LatticePolytope vertices_from_halfspaces(const std::vector<HalfSpace>& halfspaces, std::size_t dim) {
  validate_normals(halfspaces, dim);

  // Restrict x to the row space of the normals so the homogenized cone is pointed.
  linalg::RatMatrix normals;
  for (const auto& h : halfspaces) normals.push_back(to_rat_point(h.normal));
  const auto lineality = linalg::nullspace(normals, dim);
  linalg::RatMatrix row_space;
  if (lineality.empty()) {
    for (std::size_t k = 0; k < dim; ++k) {
      RatPoint e = zero_point(dim);
      e[k] = 1;
      row_space.push_back(std::move(e));
    }
  } else {
    row_space = linalg::nullspace(lineality, dim);
  }
  const std::size_t r = row_space.size();

  std::vector<dd::IntegerVector> rows;
  for (const auto& h : halfspaces) {
    RatPoint row(r + 1);
    for (std::size_t j = 0; j < r; ++j) row[j] = dot(h.normal, row_space[j]);
    row[r] = h.offset;
    rows.push_back(dd::integral_row(row));
  }
  {
    dd::IntegerVector t(r + 1, Integer(0));
    t[r] = 1;
    rows.push_back(std::move(t));
  }
  const auto rays = dd::extreme_rays(rows);

  std::vector<RatPoint> vertices;
  bool recession = false;
  for (const auto& ray : rays) {
    if (ray[r] == 0) {
      recession = true;
      continue;
    }
    RatPoint x = zero_point(dim);
    for (std::size_t j = 0; j < r; ++j) add_scaled(x, row_space[j], Rational(ray[j], ray[r]));
    vertices.push_back(std::move(x));
  }
  if (vertices.empty()) throw Error(ErrorKind::Empty, "halfspaces have no common point");
  if (recession || !lineality.empty()) throw Error(ErrorKind::Unbounded, "region is not bounded");

  {
    linalg::RatMatrix diffs;
    for (std::size_t k = 1; k < vertices.size(); ++k) {
      RatPoint d = vertices[k];
      add_scaled(d, vertices[0], Rational(-1));
      diffs.push_back(std::move(d));
    }
    if (linalg::rank(diffs) < dim) throw Error(ErrorKind::LowDimensional, "affine hull is smaller than R^" + std::to_string(dim));
  }

  LatticePolytope p;
  p.dim_ = dim;
  for (const auto& v : vertices) {
    IntPoint iv;
    for (const auto& x : v) {
      if (!is_integer(x)) throw Error(ErrorKind::NonIntegralVertex, "vertex " + to_string(v) + " is not integral");
      iv.push_back(to_int64(boost::multiprecision::numerator(x)));
    }
    p.vertices_.push_back(std::move(iv));
  }
  std::sort(p.vertices_.begin(), p.vertices_.end());

  for (const auto& h : halfspaces) {
    const auto tight = tight_vertices(h, p.vertices_);
    if (linalg::affine_rank(select(p.vertices_, tight)) != static_cast<int>(dim) - 1) continue;
    HalfSpace n = normalized(h);
    if (std::find(p.halfspaces_.begin(), p.halfspaces_.end(), n) != p.halfspaces_.end()) continue;
    p.halfspaces_.push_back(std::move(n));
  }
  return p;
}

LatticePolytope hull_of_vertices(const std::vector<IntPoint>& points) {
  if (points.empty()) throw Error(ErrorKind::Empty, "no vertices given");
  const std::size_t dim = points.front().size();
  if (dim == 0) throw Error(ErrorKind::InvalidInput, "dimension must be positive");
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].size() != dim) {
      throw Error(ErrorKind::InvalidInput, "vertices[" + std::to_string(k) + "] has length " +
                                               std::to_string(points[k].size()) + ", expected " +
                                               std::to_string(dim));
    }
  }
  if (linalg::affine_rank(points) != static_cast<int>(dim)) {
    throw Error(ErrorKind::LowDimensional, "affine hull is smaller than R^" + std::to_string(dim));
  }
  std::vector<dd::IntegerVector> rows;
  for (const auto& q : points) {
    dd::IntegerVector row;
    for (auto x : q) row.emplace_back(x);
    row.emplace_back(1);
    rows.push_back(std::move(row));
  }
  LatticePolytope p;
  p.dim_ = dim;
  for (const auto& ray : dd::extreme_rays(rows)) {
    HalfSpace h;
    for (std::size_t c = 0; c < dim; ++c) h.normal.push_back(to_int64(ray[c]));
    h.offset = to_int64(ray[dim]);
    p.halfspaces_.push_back(normalized(h));
  }
  std::sort(p.halfspaces_.begin(), p.halfspaces_.end());

  for (const auto& q : points) {
    linalg::IntMatrix tight_normals;
    for (const auto& h : p.halfspaces_)
      if (h.slack(q) == 0) tight_normals.push_back(h.normal);
    if (linalg::rank(tight_normals) == dim) p.vertices_.push_back(q);
  }
  std::sort(p.vertices_.begin(), p.vertices_.end());
  p.vertices_.erase(std::unique(p.vertices_.begin(), p.vertices_.end()), p.vertices_.end());
  return p;
}

LatticePolytope scale(const LatticePolytope& p, std::int64_t factor) {
  if (factor < 1) throw Error(ErrorKind::InvalidInput, "scale factor must be positive");
  LatticePolytope out = p;
  for (auto& h : out.halfspaces_) h.offset *= factor;
  for (auto& v : out.vertices_)
    for (auto& x : v) x *= factor;
  return out;
}

IntPoint LatticeChart::apply(const IntPoint& t) const {
  IntPoint x = origin;
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t c = 0; c < x.size(); ++c) x[c] += t[j] * basis[j][c];
  return x;
}

RatPoint LatticeChart::apply(const RatPoint& t) const {
  RatPoint x = to_rat_point(origin);
  for (std::size_t j = 0; j < basis.size(); ++j) add_scaled(x, to_rat_point(basis[j]), t[j]);
  return x;
}

IntPoint LatticeChart::coordinates(const IntPoint& p, std::int64_t scale) const {
  const std::size_t m = basis.size();
  if (m == 0) return {};
  const std::size_t n = origin.size();
  // Pick m coordinates on which the basis is invertible (greedy row selection).
  linalg::RatMatrix a;
  RatPoint b;
  linalg::RatMatrix trial;
  for (std::size_t c = 0; c < n && a.size() < m; ++c) {
    RatPoint row(m);
    for (std::size_t j = 0; j < m; ++j) row[j] = basis[j][c];
    trial.push_back(row);
    if (linalg::rank(trial) > a.size()) {
      a.push_back(std::move(row));
      b.emplace_back(p[c] - scale * origin[c]);
    } else {
      trial.pop_back();
    }
  }
  const auto t = linalg::solve_square(a, b);
  IntPoint out;
  for (const auto& x : *t) {
    if (!is_integer(x)) throw Error(ErrorKind::DomainMismatch, "point is not on the facet lattice");
    out.push_back(to_int64(boost::multiprecision::numerator(x)));
  }
  return out;
}

Facet facet(const LatticePolytope& p, std::size_t index) {
  if (index >= p.facet_count()) {
    throw Error(ErrorKind::BadIndex, "facet index " + std::to_string(index) + " out of range (polytope has " +
                                         std::to_string(p.facet_count()) + " facets)");
  }
  Facet f;
  f.index = index;
  f.halfspace = p.halfspaces()[index];
  for (const auto& v : p.vertices())
    if (f.halfspace.slack(v) == 0) f.vertices.push_back(v);
  f.chart.origin = f.vertices.front();
  f.chart.basis = linalg::kernel_lattice_basis(f.halfspace.normal);
  return f;
}

std::vector<Facet> facets(const LatticePolytope& p) {
  std::vector<Facet> out;
  for (std::size_t k = 0; k < p.facet_count(); ++k) out.push_back(facet(p, k));
  return out;
}

DelzantReport is_delzant(const LatticePolytope& p) {
  const auto& vs = p.vertices();
  const std::size_t n = p.dim();
  std::vector<std::vector<std::size_t>> tight(vs.size());
  for (std::size_t v = 0; v < vs.size(); ++v)
    for (std::size_t h = 0; h < p.facet_count(); ++h)
      if (p.halfspaces()[h].slack(vs[v]) == 0) tight[v].push_back(h);

  DelzantReport report;
  for (std::size_t v = 0; v < vs.size(); ++v) {
    std::vector<IntPoint> edges;
    for (std::size_t w = 0; w < vs.size(); ++w) {
      if (w == v) continue;
      linalg::IntMatrix common;
      for (auto h : tight[v])
        if (std::binary_search(tight[w].begin(), tight[w].end(), h)) common.push_back(p.halfspaces()[h].normal);
      if (linalg::rank(common) + 1 != n) continue;
      IntPoint d(n);
      for (std::size_t c = 0; c < n; ++c) d[c] = vs[w][c] - vs[v][c];
      edges.push_back(linalg::primitive(std::move(d)));
    }
    Integer det = 0;
    if (edges.size() == n) det = linalg::determinant(edges);
    if (boost::multiprecision::abs(det) != 1) {
      report.is_delzant = false;
      report.failures.push_back({vs[v], std::move(edges), det});
    }
  }
  return report;
}

std::vector<IntPoint> scaled_lattice_points(const LatticePolytope& p, std::int64_t scale) {
  if (scale < 1) throw Error(ErrorKind::InvalidInput, "scale must be a positive integer");
  const std::size_t n = p.dim();
  IntPoint lo(n), hi(n);
  for (std::size_t c = 0; c < n; ++c) {
    lo[c] = hi[c] = p.vertices().front()[c];
    for (const auto& v : p.vertices()) {
      lo[c] = std::min(lo[c], v[c]);
      hi[c] = std::max(hi[c], v[c]);
    }
    lo[c] *= scale;
    hi[c] *= scale;
  }
  // Odometer over the bounding box; last coordinate fastest keeps lexicographic order.
  std::vector<IntPoint> out;
  IntPoint b = lo;
  while (true) {
    if (p.contains(b, scale)) out.push_back(b);
    std::size_t c = n;
    while (c > 0) {
      --c;
      if (b[c] < hi[c]) {
        ++b[c];
        break;
      }
      b[c] = lo[c];
      if (c == 0) return out;
    }
  }
}

std::vector<RatPoint> lattice_points(const LatticePolytope& p, std::int64_t scale) {
  std::vector<RatPoint> out;
  for (const auto& b : scaled_lattice_points(p, scale)) out.push_back(scaled_point(b, scale));
  return out;
}

std::size_t lattice_count(const LatticePolytope& p, std::int64_t scale) {
  return scaled_lattice_points(p, scale).size();
}

}  // namespace toric
