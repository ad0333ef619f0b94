#include "toric/obstruction.hpp"

#include "toric/error.hpp"
#include "toric/measures.hpp"

#include <algorithm>
#include <set>

namespace toric {

void validate_divisors(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors) {
  std::set<std::size_t> seen;
  for (std::size_t t = 0; t < divisors.size(); ++t) {
    const auto& d = divisors[t];
    if (d.facet >= p.facet_count()) {
      throw Error(ErrorKind::BadFacetIndex, "divisors[" + std::to_string(t) + "].facet = " + std::to_string(d.facet) +
                                                " but the polytope has " + std::to_string(p.facet_count()) +
                                                " facets");
    }
    if (d.beta <= 0 || d.beta > 1) {
      throw Error(ErrorKind::InvalidInput, "divisors[" + std::to_string(t) + "].beta = " + to_string(d.beta) +
                                               " is outside (0, 1]");
    }
    if (!seen.insert(d.facet).second) {
      throw Error(ErrorKind::InvalidInput, "divisors[" + std::to_string(t) + "].facet repeats facet " +
                                               std::to_string(d.facet));
    }
  }
}

WeightedMeasures weighted_measures(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors) {
  validate_divisors(p, divisors);
  const auto report = measure_report(p);
  WeightedMeasures w{report.volume, report.moment, 0, zero_point(p.dim()), report.boundary_volume};
  for (const auto& d : divisors) {
    const auto& fm = report.facets[d.facet];
    w.divisor_volume += d.weight() * fm.volume;
    add_scaled(w.divisor_moment, fm.moment, d.weight());
  }
  return w;
}

namespace {

RatPoint lattice_sum(const LatticePolytope& p, std::int64_t i) {
  RatPoint s = zero_point(p.dim());
  for (const auto& b : scaled_lattice_points(p, i))
    for (std::size_t c = 0; c < b.size(); ++c) s[c] += b[c];
  for (auto& x : s) x /= i;
  return s;
}

RatPoint q_from(const WeightedMeasures& w, std::size_t count, const RatPoint& sum, std::int64_t i) {
  const Rational two_i(2 * i);
  const Rational e(count);
  const Rational mass = two_i * w.volume + w.divisor_volume;
  RatPoint q(sum.size());
  for (std::size_t c = 0; c < q.size(); ++c) q[c] = e * (two_i * w.moment[c] + w.divisor_moment[c]) - mass * sum[c];
  return q;
}

}  // namespace

RatPoint q_vector(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors, std::int64_t i) {
  if (i < 1) throw Error(ErrorKind::InvalidInput, "i must be a positive integer");
  const auto w = weighted_measures(p, divisors);
  return q_from(w, lattice_count(p, i), lattice_sum(p, i), i);
}

Polynomial ehrhart_polynomial(const LatticePolytope& p) {
  const std::int64_t n = static_cast<std::int64_t>(p.dim());
  std::vector<Rational> nodes{0}, values{1};
  for (std::int64_t i = 1; i <= n + 1; ++i) {
    nodes.emplace_back(i);
    values.emplace_back(lattice_count(p, i));
  }
  const auto poly = Polynomial::interpolate(nodes, values);
  const std::int64_t check = n + 2;
  if (poly(Rational(check)) != Rational(lattice_count(p, check))) {
    throw Error(ErrorKind::VerificationFailed, "Ehrhart interpolation disagrees with enumeration at i = " +
                                                   std::to_string(check));
  }
  return poly;
}

VectorPolynomial lattice_sum_polynomial(const LatticePolytope& p) {
  const std::int64_t n = static_cast<std::int64_t>(p.dim());
  auto integer_sum = [&](std::int64_t i) {
    RatPoint s = zero_point(p.dim());
    for (const auto& b : scaled_lattice_points(p, i))
      for (std::size_t c = 0; c < b.size(); ++c) s[c] += b[c];
    return s;
  };
  std::vector<Rational> nodes{0};
  std::vector<RatPoint> values{zero_point(p.dim())};
  for (std::int64_t i = 1; i <= n + 3; ++i) {
    nodes.emplace_back(i);
    values.push_back(integer_sum(i));
  }
  const auto w = VectorPolynomial::interpolate(nodes, values);
  const std::int64_t check = n + 4;
  if (w(Rational(check)) != integer_sum(check)) {
    throw Error(ErrorKind::VerificationFailed, "lattice-sum interpolation disagrees with enumeration at i = " +
                                                   std::to_string(check));
  }
  std::vector<Polynomial> comps;
  for (const auto& c : w.components()) {
    if (c.coefficient(0) != 0) throw Error(ErrorKind::VerificationFailed, "lattice sum has a nonzero constant term");
    std::vector<Rational> shifted;
    for (std::size_t k = 1; k < c.coefficients().size(); ++k) shifted.push_back(c.coefficients()[k]);
    comps.emplace_back(std::move(shifted));
  }
  return VectorPolynomial(std::move(comps));
}

VectorPolynomial q_polynomial(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors) {
  const auto w = weighted_measures(p, divisors);
  const auto e = ehrhart_polynomial(p);
  const auto s = lattice_sum_polynomial(p);
  const Polynomial mass({w.divisor_volume, 2 * w.volume});
  std::vector<Polynomial> comps;
  for (std::size_t c = 0; c < p.dim(); ++c) {
    const Polynomial mom({w.divisor_moment[c], 2 * w.moment[c]});
    comps.push_back(e * mom - mass * s.component(c));
  }
  VectorPolynomial q(std::move(comps));
  const std::int64_t n = static_cast<std::int64_t>(p.dim());
  for (std::int64_t i = 1; i <= n + 3; ++i) {
    const auto direct = q_from(w, lattice_count(p, i), lattice_sum(p, i), i);
    if (q(Rational(i)) != direct) {
      throw Error(ErrorKind::VerificationFailed, "Q polynomial disagrees with direct Q_i at i = " + std::to_string(i));
    }
  }
  return q;
}

AsymptoticVerdict asymptotic_verdict(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors) {
  AsymptoticVerdict v;
  v.q = q_polynomial(p, divisors);
  v.vanishes = v.q.is_zero();
  if (v.vanishes) {
    v.verdict = "obstruction vanishes";
    v.detail = "Q_i = 0 for every i; necessary condition for asymptotic log Chow semistability holds";
    return v;
  }
  // A nonzero polynomial of degree d has a nonzero value among 1..d+1.
  for (std::int64_t i = 1;; ++i) {
    const auto qi = v.q(Rational(i));
    bool nonzero = false;
    for (const auto& x : qi) nonzero = nonzero || x != 0;
    if (nonzero) {
      v.obstructed_at = i;
      break;
    }
  }
  v.verdict = "asymptotically Chow unstable";
  v.detail = "log Chow obstruction Q_i is nonzero at i = " + std::to_string(*v.obstructed_at);
  return v;
}

}  // namespace toric
