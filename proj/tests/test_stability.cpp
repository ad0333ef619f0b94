#include "support.hpp"

#include "toric/dd.hpp"
#include "toric/error.hpp"
#include "toric/linalg.hpp"
#include "toric/stability.hpp"

#include <doctest.h>

using namespace toric;
using testing::r;

namespace {

std::vector<DivisorSpec> ends(const Rational& b0, const Rational& binf) { return {{0, b0}, {1, binf}}; }

Rational factorial(std::size_t n) {
  Rational f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= static_cast<long>(k);
  return f;
}

// Minimum of the margin over the vertices of the normalized cone section,
// enumerated by double description on the homogenized system.
Rational vertex_minimum(const LatticePolytope& p, const std::vector<DivisorSpec>& divs, std::int64_t i) {
  const auto cone = concavity_cone(p, i);
  const std::size_t m = cone.points.size();
  std::vector<dd::IntegerVector> rows;
  auto push = [&](RatPoint row) { rows.push_back(dd::integral_row(row)); };
  for (const auto& c : cone.constraints) {
    RatPoint row(m + 1, 0);
    row[c.target] = 1;
    for (std::size_t j = 0; j < c.support.size(); ++j) row[c.support[j]] -= c.weights[j];
    push(row);
  }
  for (std::size_t k = 0; k < m; ++k) {
    RatPoint up(m + 1, 0), down(m + 1, 0);
    up[k] = -1, up[m] = 1;
    down[k] = 1, down[m] = 1;
    push(up), push(down);
  }
  std::vector<RatPoint> eqs{RatPoint(m + 1, 0)};
  for (std::size_t k = 0; k < m; ++k) eqs[0][k] = 1;
  for (std::size_t c = 0; c < p.dim(); ++c) {
    RatPoint e(m + 1, 0);
    for (std::size_t k = 0; k < m; ++k) e[k] = cone.points[k][c];
    eqs.push_back(e);
  }
  for (auto e : eqs) {
    push(e);
    for (auto& x : e) x = -x;
    push(e);
  }
  RatPoint t(m + 1, 0);
  t[m] = 1;
  push(t);
  std::optional<Rational> best;
  for (const auto& ray : dd::extreme_rays(rows)) {
    if (ray[m] == 0) continue;
    std::vector<Rational> v;
    for (std::size_t k = 0; k < m; ++k) v.push_back(Rational(ray[k]) / Rational(ray[m]));
    const Rational value = margin(p, divs, i, concave_envelope(testing::lattice_function(p, i, v)));
    if (!best || value < *best) best = value;
  }
  return *best;
}

}  // namespace

TEST_SUITE("stability") {
  TEST_CASE("margin of the tent function") {
    const auto unit = load_fixture("cp1-unit").polytope;
    const auto g = concave_envelope(testing::lattice_function(unit, 2, {0, 1, 0}));
    CHECK(margin(unit, ends(r(1, 2), r(1, 2)), 2, g) == 1);
  }

  TEST_CASE("constants have zero margin and linear functions pair with Q") {
    for (const auto& name : testing::fixture_list()) {
      const auto fx = load_fixture(name);
      for (std::int64_t i = 1; i <= 4; ++i) {
        const MarginFunctional m(fx.polytope, fx.divisors, i);
        CHECK(m(concave_envelope(LatticeFunction::affine(fx.polytope, i, {RatPoint(fx.polytope.dim(), 0), r(7, 3)}))) ==
              0);
        RatPoint u(fx.polytope.dim());
        for (std::size_t c = 0; c < u.size(); ++c) u[c] = r(static_cast<long>(2 * c) - 3, static_cast<long>(c) + 2);
        const Rational expect = dot(u, q_vector(fx.polytope, fx.divisors, i));
        CHECK(m(concave_envelope(LatticeFunction::affine(fx.polytope, i, {u, 0}))) == expect);
        CHECK(m(concave_envelope(LatticeFunction::affine(fx.polytope, i, {u, r(-4, 9)}))) == expect);
      }
    }
  }

  TEST_CASE("margin agrees with the oracle and with its linearization") {
    std::mt19937_64 rng(31);
    for (const auto& name : testing::fixture_list()) {
      const auto fx = load_fixture(name);
      const auto o = testing::raw(name);
      for (std::int64_t i = 1; i <= 2; ++i) {
        const MarginFunctional m(fx.polytope, fx.divisors, i);
        std::vector<PLFunction> gs;
        for (int trial = 0; trial < 5; ++trial) {
          const auto phi = testing::lattice_function(fx.polytope, i, testing::random_values(rng, m.lattice_count()));
          gs.push_back(concave_envelope(phi));
          CHECK(m(gs.back()) == oracle::margin(o, testing::raw_divisors(fx.divisors), i, testing::as_map(phi)));
        }
        for (const auto& g : gs) {
          const auto w = m.weights(g);
          Rational at_g = 0;
          for (std::size_t k = 0; k < w.size(); ++k) at_g += w[k] * g.values()[k];
          CHECK(at_g == m(g));
          for (const auto& h : gs) {
            Rational at_h = 0;
            for (std::size_t k = 0; k < w.size(); ++k) at_h += w[k] * h.values()[k];
            CHECK(at_h <= m(h));
          }
        }
      }
    }
  }

  TEST_CASE("homogeneity and affine translation") {
    std::mt19937_64 rng(37);
    for (const auto& name : testing::fixture_list()) {
      const auto fx = load_fixture(name);
      const std::int64_t i = 2;
      const MarginFunctional m(fx.polytope, fx.divisors, i);
      const auto phi = testing::lattice_function(fx.polytope, i, testing::random_values(rng, m.lattice_count()));
      const auto g = concave_envelope(phi);
      CHECK(m(g.scaled(r(9, 4))) == r(9, 4) * m(g));
      RatPoint u(fx.polytope.dim(), r(1, 3));
      std::vector<Rational> shifted;
      for (std::size_t k = 0; k < g.points().size(); ++k) {
        shifted.push_back(g.values()[k] + dot(u, scaled_point(g.points()[k], i)) + 5);
      }
      CHECK(m(concave_envelope(testing::lattice_function(fx.polytope, i, shifted))) == m(g) + dot(u, m.q()));
    }
  }

  TEST_CASE("domain checks") {
    const auto unit = load_fixture("cp1-unit");
    const MarginFunctional m(unit.polytope, unit.divisors, 2);
    CHECK_THROWS_AS(m(concave_envelope(LatticeFunction::affine(unit.polytope, 3, {{1}, 0}))), Error);
    CHECK_THROWS_AS(m(concave_envelope(LatticeFunction::affine(load_fixture("cp1-sym").polytope, 2, {{1}, 0}))),
                    Error);
  }

  TEST_CASE("linear mode") {
    const auto unit = load_fixture("cp1-unit").polytope;
    const auto v = decide_semistable(unit, ends(1, r(1, 2)), 3);
    CHECK(v.decision == Decision::Unstable);
    REQUIRE(v.witness);
    const Rational q = v.q[0];
    CHECK(*v.witness_margin == -q * q);
    CHECK(margin(unit, ends(1, r(1, 2)), 3, *v.witness) == -q * q);
    const auto w = decide_semistable(unit, ends(r(1, 2), r(1, 2)), 3);
    CHECK(w.decision == Decision::Inconclusive);
    CHECK_FALSE(w.warnings.empty());
  }

  TEST_CASE("exact mode on the interval") {
    const auto unit = load_fixture("cp1-unit").polytope;
    StabilityOptions exact;
    exact.mode = SearchMode::Exact;
    for (const Rational beta : {Rational(1), r(13, 14), r(1, 2)}) {
      for (std::int64_t i = 1; i <= 8; ++i) {
        const auto v = decide_semistable(unit, ends(beta, beta), i, exact);
        CHECK(v.decision == Decision::Semistable);
        CHECK(v.certified);
        CHECK(*v.margin_min == 0);
      }
    }
    const auto one = decide_semistable(unit, {}, 1, exact);
    CHECK(one.decision == Decision::Semistable);
    CHECK(*one.margin_min == 0);
  }

  TEST_CASE("exact minimum matches vertex enumeration on the interval") {
    const auto unit = load_fixture("cp1-unit").polytope;
    StabilityOptions exact;
    exact.mode = SearchMode::Exact;
    for (const Rational beta : {Rational(1), r(2, 3)}) {
      for (std::int64_t i = 2; i <= 5; ++i) {
        const auto v = decide_semistable(unit, ends(beta, beta), i, exact);
        CHECK(*v.margin_min == vertex_minimum(unit, ends(beta, beta), i));
      }
    }
  }

  TEST_CASE("exact mode on two-dimensional fixtures") {
    StabilityOptions exact;
    exact.mode = SearchMode::Exact;
    for (const auto& name : {"square-sym", "simplex2"}) {
      const auto fx = load_fixture(name);
      for (std::int64_t i = 1; i <= 2; ++i) {
        const auto v = decide_semistable(fx.polytope, fx.divisors, i, exact);
        CAPTURE(name);
        CAPTURE(i);
        if (v.decision == Decision::Unstable) {
          CHECK(margin(fx.polytope, fx.divisors, i, *v.witness) < 0);
        } else {
          CHECK(v.decision == Decision::Semistable);
          CHECK(v.certified);
          // A vertex of the section can only sit above the minimum of a convex function.
          // Vertex enumeration is only affordable on small sections.
          if (lattice_count(fx.polytope, i) <= 10) CHECK(*v.margin_min <= vertex_minimum(fx.polytope, fx.divisors, i));
          std::mt19937_64 rng(41 + i);
          for (int trial = 0; trial < 500; ++trial) {
            const auto phi = testing::lattice_function(fx.polytope, i,
                                                       testing::random_values(rng, lattice_count(fx.polytope, i)));
            CHECK(margin(fx.polytope, fx.divisors, i, concave_envelope(phi)) >= 0);
          }
        }
      }
    }
  }

  TEST_CASE("exact refines linear") {
    std::mt19937_64 rng(43);
    StabilityOptions exact;
    exact.mode = SearchMode::Exact;
    for (const auto& name : testing::fixture_list()) {
      const auto fx = load_fixture(name);
      for (std::int64_t i = 1; i <= 2; ++i) {
        std::vector<DivisorSpec> divs;
        for (std::size_t t = 0; t < fx.polytope.facet_count(); ++t) {
          if (rng() % 2) divs.push_back({t, r(1 + static_cast<int>(rng() % 4), 4)});
        }
        const auto lin = decide_semistable(fx.polytope, divs, i);
        if (lin.decision != Decision::Unstable) continue;
        const auto ex = decide_semistable(fx.polytope, divs, i, exact);
        CHECK(ex.decision == Decision::Unstable);
        CHECK(margin(fx.polytope, divs, i, *ex.witness) < 0);
      }
    }
  }

  TEST_CASE("sampled mode never certifies") {
    StabilityOptions sampled;
    sampled.mode = SearchMode::Sampled;
    sampled.samples = 64;
    const auto fx = load_fixture("square-sym");
    const auto v = decide_semistable(fx.polytope, fx.divisors, 2, sampled);
    CHECK(v.decision != Decision::Semistable);
    CHECK_FALSE(v.certified);
    const auto unit = load_fixture("cp1-unit").polytope;
    const std::vector<DivisorSpec> lopsided{{0, 1}, {1, r(1, 2)}};
    for (std::int64_t i = 1; i <= 3; ++i) {
      const auto u = decide_semistable(unit, lopsided, i, sampled);
      CHECK(u.decision == Decision::Unstable);
      REQUIRE(u.witness);
      CHECK(margin(unit, lopsided, i, *u.witness) < 0);
    }
    const auto fx1 = load_fixture("hirzebruch1");
    const auto h = decide_semistable(fx1.polytope, fx1.divisors, 1, sampled);
    CHECK(h.decision != Decision::Semistable);
    CHECK(h.witness.has_value() == (h.decision == Decision::Unstable));
    if (h.witness) CHECK(margin(fx1.polytope, fx1.divisors, 1, *h.witness) < 0);
  }

  TEST_CASE("caps fall back to sampling") {
    StabilityOptions exact;
    exact.mode = SearchMode::Exact;
    exact.max_constraints = 3;
    exact.samples = 16;
    const auto fx = load_fixture("square-sym");
    const auto v = decide_semistable(fx.polytope, fx.divisors, 2, exact);
    CHECK(v.cap_exceeded);
    CHECK_FALSE(v.certified);
    CHECK(parse_search_mode("linear") == SearchMode::LinearOnly);
    CHECK_THROWS_AS(parse_search_mode("vertex"), Error);
  }

  TEST_CASE("affine hull of the secondary polytope") {
    const auto unit = load_fixture("cp1-unit").polytope;
    const auto sys = affine_hull_constraints(unit, 1);
    REQUIRE(sys.equalities.size() == 2);
    CHECK(sys.equalities[0].rhs == 2);
    CHECK(sys.equalities[1].rhs == 1);
    CHECK(sys.satisfied_by({1, 1}));
    const auto f = affine_hull_constraints_facet(unit, 1, 1);
    CHECK(f.satisfied_by({0, 1}));
    CHECK_FALSE(f.satisfied_by({1, 1}));
    CHECK(affine_hull_constraints(unit, 2).equalities[0].rhs == 4);
  }

  TEST_CASE("GKZ vectors lie on the affine hulls") {
    std::mt19937_64 rng(47);
    for (const auto& name : testing::fixture_list()) {
      const auto fx = load_fixture(name);
      const std::size_t n = fx.polytope.dim();
      for (std::int64_t i = 1; i <= 3; ++i) {
        const auto sys = affine_hull_constraints(fx.polytope, i);
        const auto mink = minkowski_affine_hull(fx.polytope, fx.divisors, i);
        for (int trial = 0; trial < 4; ++trial) {
          const auto g = concave_envelope(
              testing::lattice_function(fx.polytope, i, testing::random_values(rng, lattice_count(fx.polytope, i))));
          const auto phi = gkz_vector(g);
          CHECK(sys.violations(phi).empty());
          std::vector<Rational> sum(phi.size());
          for (std::size_t k = 0; k < phi.size(); ++k) sum[k] = 2 * factorial(n) * phi[k];
          for (std::size_t t = 0; t < fx.polytope.facet_count(); ++t) {
            const auto fphi = facet_gkz_vector(facet(fx.polytope, t), g);
            CHECK(affine_hull_constraints_facet(fx.polytope, t, i).violations(fphi).empty());
          }
          for (const auto& d : fx.divisors) {
            const auto fphi = facet_gkz_vector(facet(fx.polytope, d.facet), g);
            for (std::size_t k = 0; k < phi.size(); ++k) sum[k] += d.weight() * factorial(n + 1) * fphi[k];
          }
          CHECK(mink.violations(sum).empty());
        }
      }
    }
  }

  TEST_CASE("constant target and the Minkowski hull") {
    const auto unit = load_fixture("cp1-unit").polytope;
    CHECK(balanced_target(unit, ends(1, 1), 1).scalar == 2);
    CHECK(balanced_target(unit, ends(r(1, 2), r(1, 2)), 1).scalar == 3);
    for (const auto& name : testing::fixture_list()) {
      const auto fx = load_fixture(name);
      for (std::int64_t i = 1; i <= 3; ++i) {
        const auto t = balanced_target(fx.polytope, fx.divisors, i);
        const RatPoint q = q_vector(fx.polytope, fx.divisors, i);
        const auto nonzero = static_cast<std::size_t>(std::count_if(q.begin(), q.end(), [](const Rational& x) { return x != 0; }));
        CHECK(t.in_minkowski_hull == (nonzero == 0));
        CHECK(t.minkowski.violations(t.target).size() == nonzero);
      }
    }
  }
}
