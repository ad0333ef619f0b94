#pragma once

#include "oracle.hpp"

#include "toric/envelope.hpp"
#include "toric/fixtures.hpp"
#include "toric/obstruction.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace testing {

using toric::Rational;
using toric::RatPoint;

inline Rational r(std::int64_t a, std::int64_t b = 1) { return toric::make_rational(a, b); }

/// Raw H-representations of the fixtures, typed in independently of fixtures.cpp.
inline oracle::Poly raw(const std::string& name) {
  if (name == "cp1-unit") return {1, {{{1}, 0}, {{-1}, 1}}};
  if (name == "cp1-sym") return {1, {{{1}, 1}, {{-1}, 1}}};
  if (name == "square-sym") return {2, {{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 1}, {{0, -1}, 1}}};
  if (name == "simplex2") return {2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, 1}}};
  if (name == "hirzebruch1") return {2, {{{-1, -1}, 1}, {{1, 0}, 1}, {{1, 1}, 1}, {{0, 1}, 1}}};
  throw std::invalid_argument(name);
}

inline std::vector<oracle::Div> raw_divisors(const std::vector<toric::DivisorSpec>& d) {
  std::vector<oracle::Div> out;
  for (const auto& x : d) out.push_back({x.facet, x.beta});
  return out;
}

inline std::map<oracle::Key, Rational> as_map(const toric::LatticeFunction& f) {
  std::map<oracle::Key, Rational> m;
  for (std::size_t k = 0; k < f.size(); ++k) m[f.points[k]] = f.values[k];
  return m;
}

inline toric::LatticeFunction lattice_function(const toric::LatticePolytope& p, std::int64_t scale,
                                               std::vector<Rational> values) {
  toric::LatticeFunction f;
  f.scale = scale;
  f.points = toric::scaled_lattice_points(p, scale);
  f.values = std::move(values);
  return f;
}

/// Values p/q with |p| <= num_bound and 1 <= q <= den_bound.
inline std::vector<Rational> random_values(std::mt19937_64& rng, std::size_t n, int num_bound = 20,
                                           int den_bound = 6) {
  std::uniform_int_distribution<int> num(-num_bound, num_bound), den(1, den_bound);
  std::vector<Rational> v;
  for (std::size_t k = 0; k < n; ++k) v.push_back(r(num(rng), den(rng)));
  return v;
}

inline const std::vector<std::string>& fixture_list() {
  static const std::vector<std::string> names{"cp1-unit", "cp1-sym", "square-sym", "simplex2", "hirzebruch1"};
  return names;
}

}  // namespace testing
