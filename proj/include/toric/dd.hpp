#pragma once

#include "toric/rational.hpp"

#include <cstddef>
#include <vector>

// Double description method over the integers.
namespace toric::dd {

using IntegerVector = std::vector<Integer>;

/// Extreme rays of the pointed cone {x : <row, x> >= 0 for every row}.
///
/// Rows are inserted in the given order (the initial basis is the first
/// linearly independent set), so the result is deterministic; rays come back
/// primitive and sorted lexicographically. Throws Error(InvalidInput) when the
/// cone is not pointed and Error(TooLarge) when an intermediate ray list
/// exceeds `max_rays`.
std::vector<IntegerVector> extreme_rays(const std::vector<IntegerVector>& rows,
                                        std::size_t max_rays = 1'000'000);

/// Scales a rational row to a primitive integer row with the same direction.
IntegerVector integral_row(const RatPoint& row);

}  // namespace toric::dd
