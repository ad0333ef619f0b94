#pragma once

#include "toric/geometry.hpp"
#include "toric/obstruction.hpp"

#include <string>
#include <vector>

namespace toric {

struct Fixture {
  std::string name;
  std::string description;
  LatticePolytope polytope;
  std::vector<DivisorSpec> divisors;
};

/// cp1-unit, cp1-sym, square-sym, simplex2, hirzebruch1. Throws Error(UnknownFixture).
Fixture load_fixture(const std::string& name);
std::vector<std::string> fixture_names();

}  // namespace toric
