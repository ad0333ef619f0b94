#include "toric/stability.hpp"

#include "toric/dd.hpp"
#include "toric/error.hpp"
#include "toric/linalg.hpp"
#include "toric/lp.hpp"
#include "toric/measures.hpp"
#include "toric/parallel.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace toric {

namespace {

Rational power(std::int64_t base, std::size_t exp) {
  Rational r = 1;
  for (std::size_t k = 0; k < exp; ++k) r *= base;
  return r;
}

Rational factorial(std::size_t n) {
  Rational r = 1;
  for (std::size_t k = 2; k <= n; ++k) r *= static_cast<unsigned>(k);
  return r;
}

bool is_zero(const RatPoint& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Rational norm_squared(const RatPoint& v) {
  Rational s = 0;
  for (const auto& x : v) s += x * x;
  return s;
}

std::vector<IntPoint> face_chart_points(const Facet& f, const PLFunction& g, const PLCell& cell,
                                        std::vector<std::size_t>& on_facet) {
  on_facet.clear();
  for (auto k : cell.vertices)
    if (f.halfspace.slack(g.points()[k], g.scale()) == 0) on_facet.push_back(k);
  std::vector<IntPoint> chart;
  if (on_facet.size() != f.halfspace.normal.size()) return chart;
  for (auto k : on_facet) chart.push_back(f.chart.coordinates(g.points()[k], g.scale()));
  return chart;
}

tri::Simplex identity_simplex(std::size_t size) {
  tri::Simplex s(size);
  for (std::size_t t = 0; t < size; ++t) s[t] = t;
  return s;
}

PLFunction envelope_of(const MarginFunctional& m, std::vector<Rational> values) {
  LatticeFunction phi;
  phi.scale = m.scale();
  phi.points = m.points();
  phi.values = std::move(values);
  return concave_envelope(phi);
}

}  // namespace

MarginFunctional::MarginFunctional(const LatticePolytope& p, std::vector<DivisorSpec> divisors, std::int64_t i)
    : polytope_(p), divisors_(std::move(divisors)), scale_(i) {
  if (i < 1) throw Error(ErrorKind::InvalidInput, "i must be a positive integer");
  measures_ = weighted_measures(p, divisors_);
  points_ = scaled_lattice_points(p, i);
  for (const auto& d : divisors_) divisor_facets_.push_back(facet(p, d.facet));
  q_ = q_vector(p, divisors_, i);
  mass_ = Rational(2 * i) * measures_.volume + measures_.divisor_volume;
}

void MarginFunctional::check(const PLFunction& g) const {
  if (g.scale() != scale_) {
    throw Error(ErrorKind::ScaleMismatch, "PL function lives on scale " + std::to_string(g.scale()) +
                                              " but the margin was requested at i = " + std::to_string(scale_));
  }
  if (g.points() != points_) throw Error(ErrorKind::DomainMismatch, "PL function is defined on another lattice");
}

Rational MarginFunctional::operator()(const PLFunction& g) const {
  check(g);
  const Rational e(points_.size());
  Rational inner = Rational(2 * scale_) * integrate_pl(polytope_, g);
  for (std::size_t t = 0; t < divisors_.size(); ++t)
    inner += divisors_[t].weight() * integrate_pl_facet(divisor_facets_[t], g);
  return e * inner - mass_ * g.lattice_sum();
}

std::vector<Rational> MarginFunctional::weights(const PLFunction& g) const {
  check(g);
  const std::size_t n = polytope_.dim();
  const Rational e(points_.size());
  std::vector<Rational> w(points_.size(), Rational(-mass_));
  const Rational bulk = e * Rational(2 * scale_) / (power(scale_, n) * static_cast<unsigned>(n + 1));
  for (const auto& cell : g.cells()) {
    const Rational c = bulk * tri::simplex_volume(points_, cell.vertices);
    for (auto k : cell.vertices) w[k] += c;
  }
  std::vector<std::size_t> on_facet;
  for (std::size_t t = 0; t < divisors_.size(); ++t) {
    const Rational weight = divisors_[t].weight();
    if (weight == 0) continue;
    const Rational per_face = e * weight / (power(scale_, n - 1) * static_cast<unsigned>(n));
    for (const auto& cell : g.cells()) {
      const auto chart = face_chart_points(divisor_facets_[t], g, cell, on_facet);
      if (chart.empty()) continue;
      const Rational c = per_face * tri::simplex_volume(chart, identity_simplex(chart.size()));
      for (auto k : on_facet) w[k] += c;
    }
  }
  return w;
}

Rational margin(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors, std::int64_t i,
                const PLFunction& g) {
  return MarginFunctional(p, divisors, i)(g);
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::Semistable: return "semistable";
    case Decision::Unstable: return "unstable";
    case Decision::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(SearchMode m) {
  switch (m) {
    case SearchMode::Exact: return "exact";
    case SearchMode::LinearOnly: return "linear";
    case SearchMode::Sampled: return "sampled";
  }
  return "?";
}

SearchMode parse_search_mode(const std::string& text) {
  if (text == "exact") return SearchMode::Exact;
  if (text == "linear") return SearchMode::LinearOnly;
  if (text == "sampled") return SearchMode::Sampled;
  throw Error(ErrorKind::InvalidInput, "unknown mode '" + text + "' (expected exact, linear or sampled)");
}

namespace {

void linear_test(const MarginFunctional& m, StabilityVerdict& v) {
  if (is_zero(m.q())) return;
  RatPoint minus_q;
  for (const auto& x : m.q()) minus_q.push_back(-x);
  const auto g = concave_envelope(LatticeFunction::affine(m.polytope(), m.scale(), AffineForm{minus_q, 0}));
  const Rational value = m(g);
  if (value != -norm_squared(m.q())) {
    throw Error(ErrorKind::VerificationFailed, "margin of <-Q_i, x> is " + to_string(value) + ", expected -|Q_i|^2");
  }
  v.decision = Decision::Unstable;
  v.witness = g;
  v.witness_margin = value;
  v.certified = true;
}

void sampled_search(const MarginFunctional& m, const StabilityOptions& options, StabilityVerdict& v) {
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> numerator(-1000, 1000);
  std::uniform_int_distribution<int> denominator(1, 16);
  std::vector<std::vector<Rational>> candidates(options.samples);
  for (auto& c : candidates) {
    c.reserve(m.lattice_count());
    for (std::size_t k = 0; k < m.lattice_count(); ++k) {
      const int num = numerator(rng);
      c.push_back(make_rational(num, denominator(rng)));
    }
  }
  std::vector<std::optional<PLFunction>> envelopes(candidates.size());
  std::vector<Rational> margins(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t k) {
    envelopes[k] = envelope_of(m, candidates[k]);
    margins[k] = m(*envelopes[k]);
  });
  v.samples = candidates.size();
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < margins.size(); ++k)
    if (!best || margins[k] < margins[*best]) best = k;
  if (best && margins[*best] < 0) {
    v.decision = Decision::Unstable;
    v.witness = envelopes[*best];
    v.witness_margin = margins[*best];
    v.certified = true;
  } else {
    v.decision = Decision::Inconclusive;
    v.warnings.push_back("no sampled concave function has negative margin; this is not a proof of semistability");
  }
}

// Kelley cutting planes for min margin(v) over the normalized section
// {v concave, v ⟂ affine functions, -1 <= v <= 1}, parameterized as v = B y.
void exact_search(const MarginFunctional& m, const StabilityOptions& options, StabilityVerdict& v) {
  const std::size_t n = m.polytope().dim();
  const std::size_t count = m.lattice_count();
  const auto cone = concavity_cone(m.polytope(), m.scale(), options.max_constraints);
  v.cone_constraints = cone.constraints.size();

  linalg::RatMatrix affine(n + 1, RatPoint(count));
  for (std::size_t k = 0; k < count; ++k) {
    affine[0][k] = 1;
    for (std::size_t c = 0; c < n; ++c) affine[c + 1][k] = m.points()[k][c];
  }
  std::vector<RatPoint> basis;
  for (const auto& b : linalg::nullspace(affine, count)) {
    RatPoint col;
    for (const auto& x : linalg::primitive_integer(b)) col.emplace_back(x);
    basis.push_back(std::move(col));
  }
  const std::size_t dim = basis.size();
  auto expand = [&](const RatPoint& y) {
    std::vector<Rational> out(count, Rational(0));
    for (std::size_t j = 0; j < dim; ++j)
      if (y[j] != 0)
        for (std::size_t k = 0; k < count; ++k) out[k] += y[j] * basis[j][k];
    return out;
  };
  auto pull_back = [&](const std::vector<Rational>& w) {
    RatPoint row(dim + 1, Rational(0));
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < count; ++k)
        if (w[k] != 0 && basis[j][k] != 0) row[j] += w[k] * basis[j][k];
    return row;
  };

  if (dim == 0) {
    v.decision = Decision::Semistable;
    v.margin_min = Rational(0);
    v.minimizer = std::vector<Rational>(count, Rational(0));
    v.certified = true;
    return;
  }

  RatPoint objective(dim + 1, Rational(0));
  objective[dim] = 1;
  lp::InequalityLP program(objective);
  std::set<dd::IntegerVector> seen;
  for (const auto& c : cone.constraints) {
    std::vector<Rational> w(count, Rational(0));
    w[c.target] += 1;
    for (std::size_t j = 0; j < c.support.size(); ++j) w[c.support[j]] -= c.weights[j];
    auto row = pull_back(w);
    if (is_zero(row)) continue;
    if (!seen.insert(dd::integral_row(row)).second) continue;
    program.add_row(row, 0);
  }
  for (std::size_t k = 0; k < count; ++k) {
    RatPoint row(dim + 1, Rational(0));
    for (std::size_t j = 0; j < dim; ++j) row[j] = basis[j][k];
    if (is_zero(row)) continue;
    program.add_row(row, -1);
    for (auto& x : row) x = -x;
    program.add_row(row, -1);
  }
  auto add_cut = [&](const PLFunction& g) {
    auto row = pull_back(m.weights(g));
    for (auto& x : row) x = -x;
    row[dim] = 1;
    program.add_row(row, 0);
  };
  add_cut(envelope_of(m, std::vector<Rational>(count, Rational(0))));

  std::optional<Rational> best_value;
  std::optional<PLFunction> best_function;
  std::vector<Rational> best_v;
  Rational lower_bound;
  for (v.iterations = 1; v.iterations <= options.max_iterations; ++v.iterations) {
    const auto sol = program.solve();
    if (sol.status != lp::Status::Optimal) throw Error(ErrorKind::VerificationFailed, "cutting-plane LP is not bounded");
    lower_bound = sol.objective;
    RatPoint y(sol.z.begin(), sol.z.begin() + static_cast<std::ptrdiff_t>(dim));
    auto values = expand(y);
    if (!cone.contains(values)) throw Error(ErrorKind::VerificationFailed, "LP solution left the concavity cone");
    auto g = envelope_of(m, values);
    const Rational value = m(g);
    const auto w = m.weights(g);
    Rational linear = 0;
    for (std::size_t k = 0; k < count; ++k) linear += w[k] * values[k];
    if (linear != value) throw Error(ErrorKind::VerificationFailed, "margin weights disagree with integration");
    if (value < lower_bound) throw Error(ErrorKind::VerificationFailed, "cutting-plane bound exceeds the margin");
    if (!best_value || value < *best_value) {
      best_value = value;
      best_function = g;
      best_v = values;
    }
    if (*best_value == lower_bound) break;
    add_cut(g);
  }

  if (best_value && *best_value == lower_bound) {
    v.margin_min = *best_value;
    v.minimizer = best_v;
    v.certified = true;
    if (*best_value < 0) {
      v.decision = Decision::Unstable;
      v.witness = best_function;
      v.witness_margin = best_value;
    } else {
      v.decision = Decision::Semistable;
    }
    return;
  }
  v.cap_exceeded = true;
  v.warnings.push_back("cutting-plane iteration cap reached");
  if (best_value && *best_value < 0) {
    v.decision = Decision::Unstable;
    v.witness = best_function;
    v.witness_margin = best_value;
    v.certified = true;
  } else if (lower_bound >= 0) {
    v.decision = Decision::Semistable;
    v.certified = true;
  } else {
    v.decision = Decision::Inconclusive;
  }
}

}  // namespace

StabilityVerdict decide_semistable(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors,
                                   std::int64_t i, const StabilityOptions& options) {
  const MarginFunctional m(p, divisors, i);
  StabilityVerdict v;
  v.mode = options.mode;
  v.scale = i;
  v.q = m.q();
  if (!is_delzant(p).is_delzant) v.warnings.push_back("polytope is not Delzant");

  switch (options.mode) {
    case SearchMode::LinearOnly:
      linear_test(m, v);
      if (v.decision != Decision::Unstable) {
        v.warnings.push_back("Q_i = 0, so the linear test is inconclusive; rerun with mode exact or sampled");
      }
      return v;
    case SearchMode::Sampled:
      sampled_search(m, options, v);
      return v;
    case SearchMode::Exact:
      break;
  }

  linear_test(m, v);
  if (v.decision == Decision::Unstable) return v;
  try {
    if (p.dim() > options.max_exact_dim) {
      throw Error(ErrorKind::TooLarge, "exact search is limited to dimension <= " +
                                           std::to_string(options.max_exact_dim));
    }
    exact_search(m, options, v);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TooLarge) throw;
    v.cap_exceeded = true;
    v.mode = SearchMode::Sampled;
    v.warnings.push_back(std::string("exact search abandoned: ") + e.what() + "; partial sampled result follows");
    sampled_search(m, options, v);
  }
  return v;
}

bool ConstraintSystem::satisfied_by(const std::vector<Rational>& phi) const { return violations(phi).empty(); }

std::vector<std::string> ConstraintSystem::violations(const std::vector<Rational>& phi) const {
  if (phi.size() != points.size()) throw Error(ErrorKind::DomainMismatch, "vector length does not match the lattice");
  std::vector<std::string> bad;
  for (const auto& eq : equalities) {
    Rational s = 0;
    for (std::size_t k = 0; k < phi.size(); ++k)
      if (eq.coefficients[k] != 0) s += eq.coefficients[k] * phi[k];
    if (s != eq.rhs) bad.push_back(eq.label);
  }
  return bad;
}

namespace {

void add_mass_and_moment(ConstraintSystem& sys, const std::vector<bool>& support, const Rational& mass,
                         const RatPoint& moment) {
  const std::size_t count = sys.points.size();
  LinearEquality m{"mass", std::vector<Rational>(count, Rational(0)), mass};
  for (std::size_t k = 0; k < count; ++k)
    if (support[k]) m.coefficients[k] = 1;
  sys.equalities.push_back(std::move(m));
  for (std::size_t c = 0; c < moment.size(); ++c) {
    LinearEquality e{"moment[" + std::to_string(c) + "]", std::vector<Rational>(count, Rational(0)), moment[c]};
    for (std::size_t k = 0; k < count; ++k)
      if (support[k]) e.coefficients[k] = sys.points[k][c];
    sys.equalities.push_back(std::move(e));
  }
}

RatPoint times(const RatPoint& v, const Rational& s) {
  RatPoint out;
  for (const auto& x : v) out.push_back(x * s);
  return out;
}

}  // namespace

ConstraintSystem affine_hull_constraints(const LatticePolytope& p, std::int64_t i) {
  if (i < 1) throw Error(ErrorKind::InvalidInput, "i must be a positive integer");
  const std::size_t n = p.dim();
  ConstraintSystem sys;
  sys.scale = i;
  sys.points = scaled_lattice_points(p, i);
  const auto report = measure_report(p);
  const Rational f = factorial(n + 1);
  add_mass_and_moment(sys, std::vector<bool>(sys.points.size(), true), f * power(i, n) * report.volume,
                      times(report.moment, f * power(i, n + 1)));
  return sys;
}

ConstraintSystem affine_hull_constraints_facet(const LatticePolytope& p, std::size_t facet_index, std::int64_t i) {
  if (i < 1) throw Error(ErrorKind::InvalidInput, "i must be a positive integer");
  const std::size_t n = p.dim();
  const auto f = facet(p, facet_index);
  const auto fm = facet_measure(f);
  ConstraintSystem sys;
  sys.scale = i;
  sys.points = scaled_lattice_points(p, i);
  std::vector<bool> on(sys.points.size());
  for (std::size_t k = 0; k < on.size(); ++k) on[k] = f.halfspace.slack(sys.points[k], i) == 0;
  const Rational fac = factorial(n);
  add_mass_and_moment(sys, on, fac * power(i, n - 1) * fm.volume, times(fm.moment, fac * power(i, n)));
  for (std::size_t k = 0; k < on.size(); ++k) {
    if (on[k]) continue;
    LinearEquality z{"zero off facet at " + to_string(scaled_point(sys.points[k], i)),
                     std::vector<Rational>(sys.points.size(), Rational(0)), 0};
    z.coefficients[k] = 1;
    sys.equalities.push_back(std::move(z));
  }
  return sys;
}

std::vector<Rational> gkz_vector(const PLFunction& g) {
  std::vector<Rational> phi(g.points().size(), Rational(0));
  for (const auto& cell : g.cells()) {
    const Rational vol(boost::multiprecision::abs(tri::oriented_volume(g.points(), cell.vertices)));
    for (auto k : cell.vertices) phi[k] += vol;
  }
  return phi;
}

std::vector<Rational> facet_gkz_vector(const Facet& f, const PLFunction& g) {
  std::vector<Rational> phi(g.points().size(), Rational(0));
  std::vector<std::size_t> on_facet;
  for (const auto& cell : g.cells()) {
    const auto chart = face_chart_points(f, g, cell, on_facet);
    if (chart.empty()) continue;
    const Rational vol(boost::multiprecision::abs(tri::oriented_volume(chart, identity_simplex(chart.size()))));
    for (auto k : on_facet) phi[k] += vol;
  }
  return phi;
}

ConstraintSystem minkowski_affine_hull(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors,
                                       std::int64_t i) {
  if (i < 1) throw Error(ErrorKind::InvalidInput, "i must be a positive integer");
  const std::size_t n = p.dim();
  const auto w = weighted_measures(p, divisors);
  const Rational f = factorial(n) * factorial(n + 1);
  ConstraintSystem sys;
  sys.scale = i;
  sys.points = scaled_lattice_points(p, i);
  const Rational mass = f * power(i, n - 1) * (Rational(2 * i) * w.volume + w.divisor_volume);
  RatPoint moment(n);
  for (std::size_t c = 0; c < n; ++c) moment[c] = f * power(i, n) * (Rational(2 * i) * w.moment[c] + w.divisor_moment[c]);
  add_mass_and_moment(sys, std::vector<bool>(sys.points.size(), true), mass, moment);
  return sys;
}

BalancedTarget balanced_target(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors,
                                           std::int64_t i) {
  const std::size_t n = p.dim();
  const auto w = weighted_measures(p, divisors);
  BalancedTarget t;
  t.minkowski = minkowski_affine_hull(p, divisors, i);
  const Rational e(t.minkowski.points.size());
  t.scalar = factorial(n) * factorial(n + 1) / e *
             (2 * power(i, n) * w.volume + power(i, n - 1) * w.divisor_volume);
  t.target.assign(t.minkowski.points.size(), t.scalar);
  t.in_minkowski_hull = t.minkowski.satisfied_by(t.target);
  return t;
}

}  // namespace toric
