#include "toric/futaki.hpp"

#include "toric/error.hpp"
#include "toric/measures.hpp"
#include "toric/parallel.hpp"
#include "toric/stability.hpp"

#include <algorithm>

namespace toric {

namespace {

Rational power(const Rational& base, std::size_t exp) {
  Rational r = 1;
  for (std::size_t k = 0; k < exp; ++k) r *= base;
  return r;
}

// Polynomial t -> Σ_{b ∈ P∩(Z/(base t))^n, keep(b)} fn(b / (base t)) of the given
// degree, interpolated at t = 1..degree+1 and checked at t = degree+2.
Polynomial sum_polynomial(const LatticePolytope& p, std::int64_t base, std::size_t degree,
                          const std::function<bool(const IntPoint&, std::int64_t)>& keep,
                          const std::function<Rational(const RatPoint&)>& fn, const std::string& what) {
  auto total = [&](std::int64_t t) {
    const std::int64_t j = base * t;
    Rational s = 0;
    for (const auto& b : scaled_lattice_points(p, j))
      if (keep(b, j)) s += fn(scaled_point(b, j));
    return s;
  };
  std::vector<Rational> nodes, values;
  for (std::size_t t = 1; t <= degree + 1; ++t) {
    nodes.emplace_back(static_cast<unsigned>(t));
    values.push_back(total(static_cast<std::int64_t>(t)));
  }
  const auto poly = Polynomial::interpolate(nodes, values);
  const auto check = static_cast<std::int64_t>(degree + 2);
  if (poly(Rational(check)) != total(check)) {
    throw Error(ErrorKind::VerificationFailed, what + " is not polynomial of degree " + std::to_string(degree));
  }
  return poly;
}

bool everywhere(const IntPoint&, std::int64_t) { return true; }

}  // namespace

ConvexPLFunction ConvexPLFunction::from_values(const LatticeFunction& h) {
  LatticeFunction neg = h;
  for (auto& v : neg.values) v = -v;
  auto env = concave_envelope(neg);
  if (env.values() != neg.values) throw Error(ErrorKind::NotConvex, "h is not convex on the lattice");
  return ConvexPLFunction(std::move(env));
}

ConvexPLFunction ConvexPLFunction::from(const LatticePolytope& p, std::int64_t k,
                                        const std::function<Rational(const RatPoint&)>& fn) {
  return from_values(LatticeFunction::from(p, k, fn));
}

ConvexPLFunction ConvexPLFunction::affine(const LatticePolytope& p, const AffineForm& form) {
  return from_values(LatticeFunction::affine(p, 1, form));
}

std::vector<Rational> ConvexPLFunction::values() const {
  std::vector<Rational> out;
  for (const auto& v : negated_.values()) out.push_back(-v);
  return out;
}

Rational ConvexPLFunction::max_value() const {
  const auto& v = negated_.values();
  return -*std::min_element(v.begin(), v.end());
}

Integer ConvexPLFunction::ceiling() const { return ceil(max_value()); }

Rational log_futaki_toric(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors,
                          const ConvexPLFunction& h) {
  validate_divisors(p, divisors);
  const auto report = measure_report(p);
  const Rational bulk = -integrate_pl(p, h.negated());
  const Rational boundary = -integrate_pl_boundary(p, h.negated());
  Rational lf = report.boundary_volume / report.volume * bulk - boundary;
  for (const auto& d : divisors) {
    const Rational on_facet = -integrate_pl_facet(facet(p, d.facet), h.negated());
    lf += d.weight() * (on_facet - report.facets[d.facet].volume / report.volume * bulk);
  }
  return lf;
}

ExpansionCoefficients expansion_coefficients(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors,
                                             const ConvexPLFunction& h) {
  validate_divisors(p, divisors);
  const std::size_t n = p.dim();
  const auto report = measure_report(p);
  ExpansionCoefficients c;
  c.ceiling = h.ceiling();
  const Rational r(c.ceiling);
  c.a0 = report.volume;
  c.a1 = report.boundary_volume / 2;
  c.b0 = r * report.volume + integrate_pl(p, h.negated());
  c.b1 = (r * report.boundary_volume + integrate_pl_boundary(p, h.negated())) / 2;
  for (const auto& d : divisors) {
    const auto f = facet(p, d.facet);
    c.a0_tilde.push_back(report.facets[d.facet].volume);
    c.b0_tilde.push_back(r * report.facets[d.facet].volume + integrate_pl_facet(f, h.negated()));
  }

  // Second route: leading coefficients of the actual counts and weight sums.
  const Rational k(h.scale());
  const auto ehrhart = ehrhart_polynomial(p);
  const auto g = [&](const RatPoint& x) { return r - h(x); };
  const auto w = sum_polynomial(p, h.scale(), n, everywhere, g, "weight sum");
  bool ok = ehrhart.coefficient(n) == c.a0 && ehrhart.coefficient(n - 1) == c.a1 &&
            w.coefficient(n) / power(k, n) == c.b0 && w.coefficient(n - 1) / power(k, n - 1) == c.b1;
  for (std::size_t t = 0; t < divisors.size() && ok; ++t) {
    const auto hs = p.halfspaces()[divisors[t].facet];
    const auto on = [&](const IntPoint& b, std::int64_t j) { return hs.slack(b, j) == 0; };
    const auto one = [](const RatPoint&) { return Rational(1); };
    const auto dt = sum_polynomial(p, h.scale(), n - 1, on, one, "facet count");
    const auto wt = sum_polynomial(p, h.scale(), n - 1, on, g, "facet weight sum");
    ok = dt.coefficient(n - 1) / power(k, n - 1) == c.a0_tilde[t] &&
         wt.coefficient(n - 1) / power(k, n - 1) == c.b0_tilde[t];
  }
  if (!ok) throw Error(ErrorKind::VerificationFailed, "expansion coefficients disagree with lattice sums");
  return c;
}

ExpansionTerms expansion_terms(const LatticePolytope& p, std::size_t facet_index, const ConvexPLFunction& h,
                               std::int64_t k) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be a positive integer");
  const std::size_t n = p.dim();
  const auto c = expansion_coefficients(p, {{facet_index, 1}}, h);
  const Rational kr(k);
  return {power(kr, n) * c.a0 + power(kr, n - 1) * c.a1, power(kr, n + 1) * c.b0 + power(kr, n) * c.b1,
          power(kr, n - 1) * c.a0_tilde.front(), power(kr, n) * c.b0_tilde.front()};
}

Rational futaki_from_expansions(const Rational& a0, const Rational& a1, const Rational& b0, const Rational& b1) {
  if (a0 == 0) throw Error(ErrorKind::InvalidInput, "a0 must be nonzero");
  return 2 * (a1 * b0 - a0 * b1) / a0;
}

Rational futaki_from_expansions(const Rational& a0, const Rational& a1, const Rational& b0, const Rational& b1,
                                const Rational& a0_tilde, const Rational& b0_tilde, const Rational& beta) {
  return futaki_from_expansions(a0, a1, b0, b1) - (1 - beta) * (a0_tilde * b0 - a0 * b0_tilde) / a0;
}

Rational futaki_from_expansions(const ExpansionCoefficients& c, const std::vector<DivisorSpec>& divisors) {
  if (c.a0_tilde.size() != divisors.size() || c.b0_tilde.size() != divisors.size()) {
    throw Error(ErrorKind::InvalidInput, "one facet expansion is needed per divisor");
  }
  Rational f = futaki_from_expansions(c.a0, c.a1, c.b0, c.b1);
  for (std::size_t t = 0; t < divisors.size(); ++t)
    f -= divisors[t].weight() * (c.a0_tilde[t] * c.b0 - c.a0 * c.b0_tilde[t]) / c.a0;
  return f;
}

ConsistencyReport asymptotic_consistency_check(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors,
                                               const ConvexPLFunction& h, std::int64_t k,
                                               const std::vector<std::int64_t>& i_list) {
  if (k < 1 || k % h.scale() != 0) {
    throw Error(ErrorKind::CreaseMismatch, "k = " + std::to_string(k) + " is not a multiple of the crease scale " +
                                               std::to_string(h.scale()) + " of h");
  }
  if (i_list.empty()) throw Error(ErrorKind::InvalidInput, "at least one i is required");
  for (std::size_t t = 0; t < i_list.size(); ++t) {
    if (i_list[t] < 1) throw Error(ErrorKind::InvalidInput, "i must be a positive integer");
    if (t > 0 && i_list[t] <= i_list[t - 1]) throw Error(ErrorKind::InvalidInput, "i values must be increasing");
  }
  const std::size_t n = p.dim();
  const auto w = weighted_measures(p, divisors);

  ConsistencyReport rep;
  rep.k = k;
  rep.log_futaki = log_futaki_toric(p, divisors, h);
  rep.expansion_futaki = futaki_from_expansions(expansion_coefficients(p, divisors, h), divisors);

  // M(i) = E(ik)(2ik ∫g + Σ w_t ∫_{F_t} g) - (2ik Vol + Σ w_t Vol F_t) Σ_a g(a), g = -h.
  const Rational kr(k);
  std::vector<Rational> e_coeffs;
  const auto ehrhart = ehrhart_polynomial(p);
  for (std::size_t m = 0; m <= n; ++m) e_coeffs.push_back(ehrhart.coefficient(m) * power(kr, m));
  const Polynomial e_of_i(e_coeffs);
  Rational facet_part = 0;
  for (const auto& d : divisors) facet_part += d.weight() * integrate_pl_facet(facet(p, d.facet), h.negated());
  const Rational bulk = integrate_pl(p, h.negated());
  const Polynomial inner({facet_part, 2 * kr * bulk});
  const Polynomial mass({w.divisor_volume, 2 * kr * w.volume});
  const auto sum_g = sum_polynomial(p, k, n, everywhere, [&](const RatPoint& x) { return -h(x); }, "lattice sum of h");
  rep.margin_polynomial = e_of_i * inner - mass * sum_g;
  rep.leading_ratio = rep.margin_polynomial.coefficient(n) / (power(kr, n) * w.volume);

  rep.scales = i_list;
  rep.margins.resize(i_list.size());
  parallel_for(i_list.size(), [&](std::size_t t) {
    const std::int64_t j = i_list[t] * k;
    const auto g = concave_envelope(LatticeFunction::from(p, j, [&](const RatPoint& x) { return -h(x); }));
    rep.margins[t] = MarginFunctional(p, divisors, j)(g);
  });
  bool matches = rep.margin_polynomial.degree() <= static_cast<int>(n);
  for (std::size_t t = 0; t < i_list.size(); ++t)
    matches = matches && rep.margin_polynomial(Rational(i_list[t])) == rep.margins[t];
  if (i_list.size() >= n + 1) {
    std::vector<Rational> nodes(i_list.begin(), i_list.end());
    rep.fitted_polynomial = Polynomial::interpolate(nodes, rep.margins);
    matches = matches && *rep.fitted_polynomial == rep.margin_polynomial;
  }
  rep.consistent = matches && rep.leading_ratio == -rep.log_futaki && rep.expansion_futaki == -rep.log_futaki;
  rep.implies_instability = rep.log_futaki > 0 && rep.margin_polynomial.degree() >= 0 &&
                            rep.margin_polynomial.coefficients().back() < 0;
  return rep;
}

}  // namespace toric
