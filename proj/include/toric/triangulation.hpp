#pragma once

#include "toric/rational.hpp"

#include <vector>

namespace toric::tri {

/// Indices into the point list handed to the triangulation routine.
using Simplex = std::vector<std::size_t>;

enum class Method { Placing, Pulling };

/// Placing triangulation of conv(points) for a full-dimensional integer point
/// set in Z^d. Points are inserted in the given order; a point that falls
/// inside the current hull is skipped. Throws Error(LowDimensional) when the
/// points do not span Z^d affinely.
std::vector<Simplex> placing(const std::vector<IntPoint>& points);

/// Pulling triangulation: cone from the first point over recursively pulled
/// facets not containing it.
std::vector<Simplex> pulling(const std::vector<IntPoint>& points);

std::vector<Simplex> triangulate(const std::vector<IntPoint>& points, Method method);

/// d! times the signed volume of the simplex (the determinant of edge vectors).
Integer oriented_volume(const std::vector<IntPoint>& points, const Simplex& simplex);

/// Lebesgue volume |det| / d!.
Rational simplex_volume(const std::vector<IntPoint>& points, const Simplex& simplex);

}  // namespace toric::tri
