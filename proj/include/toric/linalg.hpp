#pragma once

#include "toric/rational.hpp"

#include <optional>
#include <vector>

// Dense exact linear algebra over Q and Z. Matrices are row lists.
namespace toric::linalg {

using RatMatrix = std::vector<RatPoint>;
using IntMatrix = std::vector<IntPoint>;

Rational determinant(RatMatrix m);

/// Fraction-free (Bareiss) determinant; falls back to rationals if 128-bit
/// intermediates would overflow.
Integer determinant(const IntMatrix& m);

std::size_t rank(RatMatrix rows);
std::size_t rank(const IntMatrix& rows);

/// Affine rank of a point set (rank of differences to the first point); -1 for empty.
int affine_rank(const IntMatrix& points);

/// Unique solution of a square system, nullopt when singular.
std::optional<RatPoint> solve_square(RatMatrix a, RatPoint b);

/// Basis of {x : rows * x = 0}; columns = ncols.
RatMatrix nullspace(RatMatrix rows, std::size_t ncols);

/// Row-style Hermite normal form of a full-row-rank integer matrix
/// (positive pivots, entries above each pivot reduced into [0, pivot)).
IntMatrix hermite_normal_form(IntMatrix rows);

/// Canonical basis of the lattice {y in Z^n : <normal, y> = 0} for a primitive normal.
IntMatrix kernel_lattice_basis(const IntPoint& normal);

std::int64_t gcd(std::int64_t a, std::int64_t b);
/// Divides by the gcd of the entries (zero vector returned unchanged).
IntPoint primitive(IntPoint v);
/// Smallest positive integer multiple of a rational vector (zero stays zero).
std::vector<Integer> primitive_integer(const RatPoint& v);

}  // namespace toric::linalg
