#include "toric/fixtures.hpp"

#include "toric/error.hpp"

namespace toric {

std::vector<std::string> fixture_names() { return {"cp1-unit", "cp1-sym", "square-sym", "simplex2", "hirzebruch1"}; }

Fixture load_fixture(const std::string& name) {
  const Rational angle = make_rational(13, 14);
  if (name == "cp1-unit") {
    return {name, "[0,1] with both endpoint divisors at beta = 13/14",
            vertices_from_halfspaces({{{1}, 0}, {{-1}, 1}}, 1), {{0, angle}, {1, angle}}};
  }
  if (name == "cp1-sym") {
    return {name, "[-1,1] with both endpoint divisors at beta = 13/14",
            vertices_from_halfspaces({{{1}, 1}, {{-1}, 1}}, 1), {{0, angle}, {1, angle}}};
  }
  if (name == "square-sym") {
    return {name, "[-1,1]^2 without divisors",
            vertices_from_halfspaces({{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 1}, {{0, -1}, 1}}, 2), {}};
  }
  if (name == "simplex2") {
    return {name, "standard triangle without divisors",
            vertices_from_halfspaces({{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, 1}}, 2), {}};
  }
  if (name == "hirzebruch1") {
    // Facets: 0 is D_inf (x + y <= 1), 1 is D_1 (x >= -1), 2 is x + y >= -1, 3 is D_2 (y >= -1).
    return {name, "first Hirzebruch surface; cone angles 13/14, 13/14, 5/7 on D_1, D_2, D_inf",
            vertices_from_halfspaces({{{-1, -1}, 1}, {{1, 0}, 1}, {{1, 1}, 1}, {{0, 1}, 1}}, 2),
            {{1, angle}, {3, angle}, {0, make_rational(5, 7)}}};
  }
  throw Error(ErrorKind::UnknownFixture, "unknown fixture '" + name + "'");
}

}  // namespace toric
