#include "support.hpp"

#include "toric/error.hpp"
#include "toric/futaki.hpp"
#include "toric/measures.hpp"
#include "toric/stability.hpp"

#include <doctest.h>

using namespace toric;
using testing::r;

namespace {

ConvexPLFunction random_convex(const LatticePolytope& p, std::int64_t k, std::mt19937_64& rng) {
  const auto g = concave_envelope(testing::lattice_function(p, k, testing::random_values(rng, lattice_count(p, k))));
  std::vector<Rational> h;
  for (const auto& v : g.values()) h.push_back(-v);
  return ConvexPLFunction::from_values(testing::lattice_function(p, k, h));
}

std::map<oracle::Key, Rational> values_of(const ConvexPLFunction& h) {
  std::map<oracle::Key, Rational> m;
  const auto v = h.values();
  for (std::size_t k = 0; k < v.size(); ++k) m[h.negated().points()[k]] = v[k];
  return m;
}

ConvexPLFunction coordinate(const LatticePolytope& p, const Rational& sign) { return ConvexPLFunction::affine(p, {{sign}, 0}); }

}  // namespace

TEST_SUITE("futaki") {
  TEST_CASE("constants have zero invariant") {
    for (const auto& name : testing::fixture_list()) {
      const auto fx = load_fixture(name);
      const auto h = ConvexPLFunction::affine(fx.polytope, {RatPoint(fx.polytope.dim(), 0), r(11, 7)});
      CHECK(log_futaki_toric(fx.polytope, fx.divisors, h) == 0);
      CHECK(futaki_from_expansions(expansion_coefficients(fx.polytope, fx.divisors, h), fx.divisors) == 0);
    }
  }

  TEST_CASE("coordinate function on the interval") {
    const auto unit = load_fixture("cp1-unit").polytope;
    const auto x = coordinate(unit, 1);
    for (const Rational beta : {r(1, 2), r(13, 14), Rational(1), r(1, 5)}) {
      CHECK(log_futaki_toric(unit, {{1, beta}}, x) == (1 - beta) / 2);
      CHECK(log_futaki_toric(unit, {{0, beta}, {1, beta}}, x) == 0);
    }
  }

  TEST_CASE("expansion data on the interval") {
    const auto unit = load_fixture("cp1-unit").polytope;
    const auto x = coordinate(unit, 1);
    const auto c = expansion_coefficients(unit, {{1, r(1, 2)}}, x);
    CHECK(c.ceiling == 1);
    CHECK(c.a0 == 1);
    CHECK(c.a1 == 1);
    CHECK(c.b0 == r(1, 2));
    CHECK(c.b1 == r(1, 2));
    CHECK(c.a0_tilde == std::vector<Rational>{1});
    CHECK(c.b0_tilde == std::vector<Rational>{0});
    for (std::int64_t k = 1; k <= 5; ++k) {
      const auto t = expansion_terms(unit, 1, x, k);
      CHECK(t.d == k + 1);
      CHECK(t.w == r(k * k, 2) + r(k, 2));
      CHECK(t.d_tilde == 1);
      CHECK(t.w_tilde == 0);
    }
  }

  TEST_CASE("expression from expansions") {
    CHECK(futaki_from_expansions(1, 1, 0, 0) == 0);
    CHECK(futaki_from_expansions(3, 2, 0, 0, 5, 0, r(1, 2)) == 0);
    for (const Rational beta : {r(1, 2), r(2, 9), Rational(1)}) {
      CHECK(futaki_from_expansions(1, 1, r(1, 2), r(1, 2), 1, 0, beta) == -(1 - beta) / 2);
    }
    CHECK_THROWS_AS(futaki_from_expansions(0, 1, 1, 1), Error);
  }

  TEST_CASE("expansions give minus the invariant, and the invariant matches the oracle") {
    std::mt19937_64 rng(53);
    for (const auto& name : testing::fixture_list()) {
      const auto fx = load_fixture(name);
      const auto o = testing::raw(name);
      for (std::int64_t k = 1; k <= 2; ++k) {
        for (int trial = 0; trial < 4; ++trial) {
          const auto h = random_convex(fx.polytope, k, rng);
          const Rational lf = log_futaki_toric(fx.polytope, fx.divisors, h);
          CAPTURE(name);
          CHECK(lf == oracle::log_futaki(o, testing::raw_divisors(fx.divisors), k, values_of(h)));
          CHECK(futaki_from_expansions(expansion_coefficients(fx.polytope, fx.divisors, h), fx.divisors) == -lf);
        }
      }
    }
  }

  TEST_CASE("affine functions without divisors") {
    for (const auto& name : testing::fixture_list()) {
      const auto p = load_fixture(name).polytope;
      const auto rep = measure_report(p);
      RatPoint u(p.dim(), r(2, 3));
      u[0] = r(-5, 2);
      RatPoint boundary_moment = zero_point(p.dim());
      for (const auto& f : rep.facets) add_scaled(boundary_moment, f.moment, 1);
      RatPoint expect = zero_point(p.dim());
      add_scaled(expect, rep.moment, rep.boundary_volume / rep.volume);
      add_scaled(expect, boundary_moment, -1);
      const Rational lf = log_futaki_toric(p, {}, ConvexPLFunction::affine(p, {u, 3}));
      CHECK(lf == dot(u, expect));
      if (name == "square-sym" || name == "cp1-sym") CHECK(lf == 0);
    }
  }

  TEST_CASE("positive scaling") {
    std::mt19937_64 rng(59);
    const auto fx = load_fixture("hirzebruch1");
    const auto h = random_convex(fx.polytope, 2, rng);
    std::vector<Rational> scaled;
    for (const auto& v : h.values()) scaled.push_back(r(7, 3) * v);
    const auto h7 = ConvexPLFunction::from_values(testing::lattice_function(fx.polytope, 2, scaled));
    CHECK(log_futaki_toric(fx.polytope, fx.divisors, h7) == r(7, 3) * log_futaki_toric(fx.polytope, fx.divisors, h));
  }

  TEST_CASE("input checks") {
    const auto unit = load_fixture("cp1-unit").polytope;
    CHECK_THROWS_AS(ConvexPLFunction::from_values(testing::lattice_function(unit, 2, {0, 1, 0})), Error);
    const auto h = ConvexPLFunction::from_values(testing::lattice_function(unit, 2, {0, -1, 0}));
    try {
      asymptotic_consistency_check(unit, {}, h, 3, {1, 2});
      FAIL("expected CreaseMismatch");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::CreaseMismatch);
    }
    CHECK_THROWS_AS(asymptotic_consistency_check(unit, {}, h, 2, {2, 1}), Error);
  }

  TEST_CASE("consistency on the interval") {
    const auto unit = load_fixture("cp1-unit").polytope;
    const auto x = coordinate(unit, 1);
    const std::vector<std::int64_t> is{1, 2, 3, 4, 5, 6};
    const auto balanced = asymptotic_consistency_check(unit, {{0, r(1, 2)}, {1, r(1, 2)}}, x, 1, is);
    CHECK(balanced.consistent);
    CHECK(balanced.log_futaki == 0);
    CHECK(balanced.margin_polynomial.coefficient(1) == 0);
    CHECK_FALSE(balanced.implies_instability);

    const auto single = asymptotic_consistency_check(unit, {{1, r(1, 2)}}, x, 1, is);
    CHECK(single.consistent);
    CHECK(single.log_futaki == r(1, 4));
    CHECK(single.expansion_futaki == r(-1, 4));
    CHECK(single.margin_polynomial == Polynomial({r(-1, 4), r(-1, 4)}));
    CHECK(single.leading_ratio == r(-1, 4));
    CHECK(single.implies_instability);
  }

  TEST_CASE("consistency on the square") {
    const auto sq = load_fixture("square-sym").polytope;
    const auto h = ConvexPLFunction::from(sq, 1, [](const RatPoint& x) { return abs(x[0]); });
    const auto rep = asymptotic_consistency_check(sq, {}, h, 1, {1, 2, 3, 4});
    CHECK(rep.consistent);
    CHECK(rep.log_futaki == -2);
    CHECK(rep.margin_polynomial == Polynomial({0, 4, 8}));
  }

  TEST_CASE("consistency on random convex functions") {
    std::mt19937_64 rng(61);
    for (const auto& name : {"cp1-unit", "simplex2", "hirzebruch1"}) {
      const auto fx = load_fixture(name);
      const auto h = random_convex(fx.polytope, 1, rng);
      const auto rep = asymptotic_consistency_check(fx.polytope, fx.divisors, h, 1, {1, 2, 3});
      CAPTURE(name);
      CHECK(rep.consistent);
    }
  }

  TEST_CASE("semistable fixtures have nonpositive invariants") {
    std::mt19937_64 rng(67);
    StabilityOptions exact;
    exact.mode = SearchMode::Exact;
    const std::vector<std::pair<std::string, std::vector<DivisorSpec>>> cases{
        {"square-sym", {}}, {"cp1-unit", {{0, r(1, 2)}, {1, r(1, 2)}}}, {"cp1-sym", {}}};
    for (const auto& [name, divs] : cases) {
      const auto p = load_fixture(name).polytope;
      bool semistable = true;
      for (std::int64_t i = 1; i <= 2; ++i) {
        semistable = semistable && decide_semistable(p, divs, i, exact).decision == Decision::Semistable;
      }
      REQUIRE(semistable);
      for (int trial = 0; trial < 10; ++trial) {
        CHECK(log_futaki_toric(p, divs, random_convex(p, 1 + trial % 2, rng)) <= 0);
      }
    }
  }
}
