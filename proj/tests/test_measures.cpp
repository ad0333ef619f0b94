#include "support.hpp"

#include "toric/error.hpp"
#include "toric/measures.hpp"

#include <doctest.h>

#include <cmath>

using namespace toric;
using testing::r;

namespace {

LatticePolytope hirzebruch() { return load_fixture("hirzebruch1").polytope; }

LatticePolytope simplex(std::size_t n) {
  std::vector<IntPoint> pts{IntPoint(n, 0)};
  for (std::size_t c = 0; c < n; ++c) {
    IntPoint e(n, 0);
    e[c] = 1;
    pts.push_back(e);
  }
  return hull_of_vertices(pts);
}

}  // namespace

TEST_SUITE("measures") {
  TEST_CASE("volumes") {
    CHECK(volume(simplex(1)) == 1);
    CHECK(volume(simplex(2)) == r(1, 2));
    CHECK(volume(simplex(3)) == r(1, 6));
    CHECK(volume(load_fixture("square-sym").polytope) == 4);
    CHECK(volume(hirzebruch()) == 4);
  }

  TEST_CASE("moments") {
    CHECK(moment(load_fixture("square-sym").polytope) == RatPoint{0, 0});
    std::vector<IntPoint> cube;
    for (int m = 0; m < 8; ++m) cube.push_back({m & 1 ? 1 : -1, m & 2 ? 1 : -1, m & 4 ? 1 : -1});
    CHECK(moment(hull_of_vertices(cube)) == RatPoint{0, 0, 0});
    CHECK(volume(hull_of_vertices(cube)) == 8);
    CHECK(moment(simplex(2)) == RatPoint{r(1, 6), r(1, 6)});
    CHECK(moment(hirzebruch()) == RatPoint{r(1, 3), r(1, 3)});
  }

  TEST_CASE("facet measures") {
    const auto square = vertices_from_halfspaces({{{1, 0}, 0}, {{-1, 0}, 1}, {{0, 1}, 0}, {{0, -1}, 1}}, 2);
    CHECK(facet_volume(facet(square, 0)) == 1);
    CHECK(facet_moment(facet(square, 0)) == RatPoint{0, r(1, 2)});
    CHECK(facet_volume(facet(hirzebruch(), 0)) == 3);
    CHECK(facet_moment(facet(hirzebruch(), 0)) == RatPoint{r(3, 2), r(3, 2)});
    const auto unit = load_fixture("cp1-unit").polytope;
    CHECK(facet_volume(facet(unit, 1)) == 1);
    CHECK(facet_moment(facet(unit, 1)) == RatPoint{1});
  }

  TEST_CASE("boundary volumes") {
    CHECK(boundary_volume(load_fixture("cp1-unit").polytope) == 2);
    CHECK(boundary_volume(hull_of_vertices({{0, 0}, {1, 0}, {0, 1}, {1, 1}})) == 4);
    CHECK(boundary_volume(hirzebruch()) == 8);
    std::vector<Rational> lengths;
    for (const auto& f : facets(hirzebruch())) lengths.push_back(facet_volume(f));
    CHECK(lengths == std::vector<Rational>{3, 2, 1, 2});
  }

  TEST_CASE("fixtures agree with shoelace and lattice lengths") {
    for (const auto& name : testing::fixture_list()) {
      CAPTURE(name);
      const auto p = load_fixture(name).polytope;
      const auto o = testing::raw(name);
      const auto rep = measure_report(p);
      CHECK(rep.volume == o.volume());
      CHECK(rep.moment == o.moment());
      CHECK(rep.boundary_volume == o.boundary_volume());
      for (const auto& f : rep.facets) {
        CHECK(f.volume == o.facet_volume(f.index));
        CHECK(f.moment == o.facet_moment(f.index));
      }
    }
  }

  TEST_CASE("placing and pulling triangulations give the same measures") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coord(-4, 4);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = trial % 2 ? 2 : 3;
      std::vector<IntPoint> pts;
      for (int k = 0; k < 9; ++k) {
        IntPoint x;
        for (std::size_t c = 0; c < n; ++c) x.push_back(coord(rng));
        pts.push_back(x);
      }
      LatticePolytope p;
      try {
        p = hull_of_vertices(pts);
      } catch (const Error&) {
        continue;
      }
      CHECK(volume(p, tri::Method::Placing) == volume(p, tri::Method::Pulling));
      CHECK(moment(p, tri::Method::Placing) == moment(p, tri::Method::Pulling));
      for (const auto& f : facets(p)) {
        CHECK(facet_measure(f, tri::Method::Placing).volume == facet_measure(f, tri::Method::Pulling).volume);
        CHECK(facet_measure(f, tri::Method::Placing).moment == facet_measure(f, tri::Method::Pulling).moment);
      }
    }
  }

  TEST_CASE("integration of PL functions") {
    const auto unit = load_fixture("cp1-unit").polytope;
    CHECK(integrate_pl(unit, concave_envelope(LatticeFunction::affine(unit, 1, {{1}, 0}))) == r(1, 2));
    CHECK(integrate_pl(unit, concave_envelope(testing::lattice_function(unit, 2, {0, 1, 0}))) == r(1, 2));
    for (const auto& name : testing::fixture_list()) {
      const auto p = load_fixture(name).polytope;
      const auto g = concave_envelope(LatticeFunction::affine(p, 2, {RatPoint(p.dim(), 0), r(5, 3)}));
      CHECK(integrate_pl(p, g) == r(5, 3) * volume(p));
      CHECK(integrate_pl_boundary(p, g) == r(5, 3) * boundary_volume(p));
    }
  }

  TEST_CASE("integrals match the supporting-plane oracle") {
    std::mt19937_64 rng(11);
    for (const auto& name : testing::fixture_list()) {
      const auto p = load_fixture(name).polytope;
      const auto o = testing::raw(name);
      for (std::int64_t k = 1; k <= 2; ++k) {
        for (int trial = 0; trial < 6; ++trial) {
          const auto phi = testing::lattice_function(p, k, testing::random_values(rng, lattice_count(p, k)));
          const auto g = concave_envelope(phi);
          const auto ref = oracle::upper_envelope(o, k, testing::as_map(phi));
          CAPTURE(name);
          CHECK(integrate_pl(p, g) == ref.integral);
          for (std::size_t t = 0; t < p.facet_count(); ++t) {
            CHECK(integrate_pl_facet(facet(p, t), g) == ref.facet_integrals[t]);
          }
        }
      }
    }
  }

  TEST_CASE("floating midpoint rule approximates the exact integral") {
    const auto p = hirzebruch();
    std::mt19937_64 rng(3);
    const auto g = concave_envelope(testing::lattice_function(p, 2, testing::random_values(rng, lattice_count(p, 2))));
    const double exact = integrate_pl(p, g).convert_to<double>();
    const int n = 120;
    double approx = 0;
    for (int a = 0; a < 3 * n; ++a) {
      for (int b = 0; b < 3 * n; ++b) {
        const RatPoint x{r(2 * a + 1, 2 * n) - 1, r(2 * b + 1, 2 * n) - 1};
        if (x[0] + x[1] > 1 || x[0] + x[1] < -1) continue;
        approx += g.evaluate(x).convert_to<double>() / (n * n);
      }
    }
    double scale = 0;
    for (const auto& v : g.values()) scale = std::max(scale, std::abs(v.convert_to<double>()));
    CHECK(std::abs(approx - exact) < 0.02 * scale * 4);
  }

  TEST_CASE("scale mismatch on a foreign lattice is rejected") {
    const auto unit = load_fixture("cp1-unit").polytope;
    const auto g = concave_envelope(LatticeFunction::affine(load_fixture("cp1-sym").polytope, 1, {{1}, 0}));
    CHECK_THROWS_AS(integrate_pl(unit, g), Error);
  }
}
