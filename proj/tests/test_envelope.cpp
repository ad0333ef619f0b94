#include "support.hpp"

#include "toric/envelope.hpp"
#include "toric/error.hpp"
#include "toric/measures.hpp"

#include <doctest.h>

using namespace toric;
using testing::r;

TEST_SUITE("envelope") {
  TEST_CASE("affine values are their own envelope") {
    for (const auto& name : testing::fixture_list()) {
      const auto p = load_fixture(name).polytope;
      AffineForm form{RatPoint(p.dim(), r(2, 3)), r(-1, 5)};
      form.gradient[0] = r(-7, 4);
      const auto phi = LatticeFunction::affine(p, 2, form);
      const auto g = concave_envelope(phi);
      CHECK(is_concave(phi));
      CHECK(g.values() == phi.values);
      for (const auto& cell : g.cells()) CHECK(cell.form == form);
    }
  }

  TEST_CASE("interval examples") {
    const auto unit = load_fixture("cp1-unit").polytope;
    const auto tent = testing::lattice_function(unit, 2, {0, 1, 0});
    CHECK(is_concave(tent));
    const auto g = concave_envelope(tent);
    CHECK(g.values() == std::vector<Rational>{0, 1, 0});
    CHECK(g.cells().size() == 2);
    CHECK(g.evaluate({r(1, 4)}) == r(1, 2));

    const auto dip = testing::lattice_function(unit, 2, {0, -1, 0});
    CHECK_FALSE(is_concave(dip));
    const auto h = concave_envelope(dip);
    CHECK(h.values() == std::vector<Rational>{0, 0, 0});
    CHECK(h.evaluate({r(1, 2)}) == 0);
  }

  TEST_CASE("envelope values match the supporting-plane oracle") {
    std::mt19937_64 rng(5);
    for (const auto& name : testing::fixture_list()) {
      const auto p = load_fixture(name).polytope;
      const auto o = testing::raw(name);
      for (std::int64_t k = 1; k <= 3; ++k) {
        const auto phi = testing::lattice_function(p, k, testing::random_values(rng, lattice_count(p, k)));
        const auto ref = oracle::upper_envelope(o, k, testing::as_map(phi));
        const auto g = concave_envelope(phi);
        for (std::size_t j = 0; j < g.points().size(); ++j) CHECK(g.values()[j] == ref.values.at(g.points()[j]));
        for (std::size_t j = 0; j < phi.size(); ++j) CHECK(g.values()[j] >= phi.values[j]);
      }
    }
  }

  TEST_CASE("idempotence") {
    std::mt19937_64 rng(9);
    for (const auto& name : testing::fixture_list()) {
      const auto p = load_fixture(name).polytope;
      const auto phi = testing::lattice_function(p, 2, testing::random_values(rng, lattice_count(p, 2)));
      const auto g = concave_envelope(phi);
      const auto again = concave_envelope(g.lattice_values());
      CHECK(again.values() == g.values());
      CHECK(is_concave(g.lattice_values()));
      for (const auto& x : lattice_points(p, 4)) CHECK(again.evaluate(x) == g.evaluate(x));
    }
  }

  TEST_CASE("cells subdivide P and carry the values") {
    std::mt19937_64 rng(13);
    for (const auto& name : testing::fixture_list()) {
      const auto p = load_fixture(name).polytope;
      const auto g = concave_envelope(testing::lattice_function(p, 2, testing::random_values(rng, lattice_count(p, 2))));
      Rational total = 0;
      for (const auto& cell : g.cells()) {
        std::vector<IntPoint> pts;
        for (auto v : cell.vertices) {
          pts.push_back(g.points()[v]);
          CHECK(cell.form(scaled_point(g.points()[v], 2)) == g.values()[v]);
        }
        tri::Simplex all(pts.size());
        for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
        total += tri::simplex_volume(pts, all);
      }
      CHECK(total / Rational(p.dim() == 1 ? 2 : 4) == volume(p));
    }
  }

  TEST_CASE("homogeneity of scaled") {
    const auto p = load_fixture("simplex2").polytope;
    const auto g = concave_envelope(testing::lattice_function(p, 1, {0, 3, 1}));
    const auto h = g.scaled(r(5, 2));
    for (std::size_t j = 0; j < g.values().size(); ++j) CHECK(h.values()[j] == r(5, 2) * g.values()[j]);
    CHECK(h.lattice_sum() == r(5, 2) * g.lattice_sum());
  }

  TEST_CASE("concavity cone examples") {
    const auto unit = load_fixture("cp1-unit").polytope;
    const auto c2 = concavity_cone(unit, 2);
    REQUIRE(c2.constraints.size() == 1);
    CHECK(c2.constraints[0].target == 1);
    CHECK(c2.constraints[0].weights == std::vector<Rational>{r(1, 2), r(1, 2)});
    CHECK(concavity_cone(unit, 3).constraints.size() == 2);

    const auto tri2 = concavity_cone(load_fixture("simplex2").polytope, 2);
    // (1/2, 0) is the midpoint of (0, 0) and (1, 0).
    const auto pts = scaled_lattice_points(load_fixture("simplex2").polytope, 2);
    const auto index = [&](IntPoint b) {
      return static_cast<std::size_t>(std::find(pts.begin(), pts.end(), b) - pts.begin());
    };
    bool found = false;
    for (const auto& c : tri2.constraints) {
      if (c.target != index({1, 0})) continue;
      std::vector<std::size_t> s = c.support;
      std::sort(s.begin(), s.end());
      if (s == std::vector<std::size_t>{index({0, 0}), index({2, 0})}) found = true;
    }
    CHECK(found);
    CHECK_THROWS_AS(concavity_cone(load_fixture("hirzebruch1").polytope, 3, 2), Error);
  }

  TEST_CASE("cone soundness and completeness") {
    std::mt19937_64 rng(17);
    for (const auto& name : testing::fixture_list()) {
      const auto p = load_fixture(name).polytope;
      const std::int64_t k = 2;
      const auto cone = concavity_cone(p, k);
      const std::size_t n = lattice_count(p, k);
      std::size_t concave = 0;
      for (int trial = 0; trial < 200; ++trial) {
        std::vector<Rational> v;
        if (trial % 2 == 0) {
          v = testing::random_values(rng, n);
        } else {
          // Concave samples with small random dents, so both outcomes occur.
          v = concave_envelope(testing::lattice_function(p, k, testing::random_values(rng, n))).values();
          if (trial % 4 == 1) v[rng() % n] -= r(1, 1 + static_cast<int>(rng() % 3));
        }
        const bool expect = is_concave(testing::lattice_function(p, k, v));
        concave += expect;
        CHECK(cone.contains(v) == expect);
      }
      CHECK(concave > 0);
      CHECK(concave < 200);
    }
  }
}
