#include "toric/triangulation.hpp"

#include "toric/dd.hpp"
#include "toric/error.hpp"
#include "toric/linalg.hpp"

#include <algorithm>
#include <map>

namespace toric::tri {

namespace {

Integer factorial(std::size_t d) {
  Integer f = 1;
  for (std::size_t k = 2; k <= d; ++k) f *= static_cast<unsigned>(k);
  return f;
}

// Sign of det[f1 - f0, ..., f_{d-1} - f0, q - f0].
int orientation(const std::vector<IntPoint>& pts, const std::vector<std::size_t>& face, const IntPoint& q) {
  const auto& base = pts[face.front()];
  linalg::IntMatrix m;
  m.reserve(face.size());
  auto diff = [&](const IntPoint& p) {
    IntPoint d(p.size());
    for (std::size_t c = 0; c < p.size(); ++c) d[c] = p[c] - base[c];
    return d;
  };
  for (std::size_t k = 1; k < face.size(); ++k) m.push_back(diff(pts[face[k]]));
  m.push_back(diff(q));
  const Integer det = linalg::determinant(m);
  return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

struct BoundaryFacet {
  std::vector<std::size_t> vertices;  // sorted
  std::size_t inside;                 // opposite vertex of the owning simplex
  int inside_sign;
};

}  // namespace

std::vector<Simplex> placing(const std::vector<IntPoint>& points) {
  if (points.empty()) throw Error(ErrorKind::Empty, "no points to triangulate");
  const std::size_t d = points.front().size();
  if (d == 0) return {Simplex{0}};

  // Initial simplex: greedy affine rank growth.
  Simplex initial{0};
  linalg::IntMatrix chosen{points[0]};
  for (std::size_t k = 1; k < points.size() && initial.size() < d + 1; ++k) {
    chosen.push_back(points[k]);
    if (linalg::affine_rank(chosen) == static_cast<int>(initial.size())) {
      initial.push_back(k);
    } else {
      chosen.pop_back();
    }
  }
  if (initial.size() < d + 1) throw Error(ErrorKind::LowDimensional, "points are not full-dimensional");

  std::vector<Simplex> simplices{initial};
  std::vector<BoundaryFacet> boundary;
  for (std::size_t j = 0; j <= d; ++j) {
    std::vector<std::size_t> face;
    for (std::size_t t = 0; t <= d; ++t)
      if (t != j) face.push_back(initial[t]);
    std::sort(face.begin(), face.end());
    const int s = orientation(points, face, points[initial[j]]);
    boundary.push_back({std::move(face), initial[j], s});
  }
  std::vector<bool> used(points.size(), false);
  for (auto k : initial) used[k] = true;

  for (std::size_t q = 0; q < points.size(); ++q) {
    if (used[q]) continue;
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < boundary.size(); ++f) {
      const int s = orientation(points, boundary[f].vertices, points[q]);
      if (s != 0 && s == -boundary[f].inside_sign) visible.push_back(f);
    }
    if (visible.empty()) continue;
    used[q] = true;

    // Ridges of visible facets seen once form the horizon.
    std::map<std::vector<std::size_t>, std::pair<int, std::size_t>> ridges;
    for (auto f : visible) {
      const auto& face = boundary[f].vertices;
      Simplex s = face;
      s.push_back(q);
      std::sort(s.begin(), s.end());
      simplices.push_back(std::move(s));
      for (std::size_t drop = 0; drop < face.size(); ++drop) {
        std::vector<std::size_t> ridge;
        for (std::size_t t = 0; t < face.size(); ++t)
          if (t != drop) ridge.push_back(face[t]);
        auto& entry = ridges[ridge];
        entry.first += 1;
        entry.second = face[drop];
      }
    }
    std::vector<BoundaryFacet> next;
    std::size_t vi = 0;
    for (std::size_t f = 0; f < boundary.size(); ++f) {
      if (vi < visible.size() && visible[vi] == f) {
        ++vi;
        continue;
      }
      next.push_back(std::move(boundary[f]));
    }
    for (auto& [ridge, entry] : ridges) {
      if (entry.first != 1) continue;
      std::vector<std::size_t> face = ridge;
      face.push_back(q);
      std::sort(face.begin(), face.end());
      const int s = orientation(points, face, points[entry.second]);
      next.push_back({std::move(face), entry.second, s});
    }
    boundary = std::move(next);
  }
  return simplices;
}

std::vector<Simplex> pulling(const std::vector<IntPoint>& points) {
  if (points.empty()) throw Error(ErrorKind::Empty, "no points to triangulate");
  const std::size_t d = points.front().size();
  if (d == 0) return {Simplex{0}};
  if (linalg::affine_rank(points) != static_cast<int>(d)) {
    throw Error(ErrorKind::LowDimensional, "points are not full-dimensional");
  }
  if (d == 1) {
    // Facets of a segment are its endpoints; cone the apex to whichever differ.
    std::size_t lo = 0, hi = 0;
    for (std::size_t k = 1; k < points.size(); ++k) {
      if (points[k][0] < points[lo][0]) lo = k;
      if (points[k][0] > points[hi][0]) hi = k;
    }
    std::vector<Simplex> out;
    if (points[lo][0] != points[0][0]) out.push_back(Simplex{0, lo});
    if (points[hi][0] != points[0][0]) out.push_back(Simplex{0, hi});
    return out;
  }

  // Facets of conv(points): extreme rays of {(a, c) : <a, p> + c >= 0}.
  std::vector<dd::IntegerVector> rows;
  for (const auto& p : points) {
    dd::IntegerVector r;
    for (auto x : p) r.emplace_back(x);
    r.emplace_back(1);
    rows.push_back(std::move(r));
  }
  const auto facets = dd::extreme_rays(rows);

  std::vector<Simplex> out;
  for (const auto& f : facets) {
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < points.size(); ++k) {
      Integer s = f[d];
      for (std::size_t c = 0; c < d; ++c) s += f[c] * points[k][c];
      if (s == 0) members.push_back(k);
    }
    if (std::find(members.begin(), members.end(), std::size_t{0}) != members.end()) continue;
    // Drop a coordinate with nonzero normal entry: injective on the facet hyperplane.
    std::size_t dropped = 0;
    while (f[dropped] == 0) ++dropped;
    std::vector<IntPoint> projected;
    for (auto k : members) {
      IntPoint p;
      for (std::size_t c = 0; c < d; ++c)
        if (c != dropped) p.push_back(points[k][c]);
      projected.push_back(std::move(p));
    }
    for (const auto& s : pulling(projected)) {
      Simplex full{0};
      for (auto local : s) full.push_back(members[local]);
      std::sort(full.begin(), full.end());
      out.push_back(std::move(full));
    }
  }
  return out;
}

std::vector<Simplex> triangulate(const std::vector<IntPoint>& points, Method method) {
  return method == Method::Placing ? placing(points) : pulling(points);
}

Integer oriented_volume(const std::vector<IntPoint>& points, const Simplex& simplex) {
  const auto& base = points[simplex.front()];
  linalg::IntMatrix m;
  for (std::size_t k = 1; k < simplex.size(); ++k) {
    IntPoint d(base.size());
    for (std::size_t c = 0; c < d.size(); ++c) d[c] = points[simplex[k]][c] - base[c];
    m.push_back(std::move(d));
  }
  return linalg::determinant(m);
}

Rational simplex_volume(const std::vector<IntPoint>& points, const Simplex& simplex) {
  const Integer det = oriented_volume(points, simplex);
  return Rational(boost::multiprecision::abs(det), factorial(simplex.size() - 1));
}

}  // namespace toric::tri
