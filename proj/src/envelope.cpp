#include "toric/envelope.hpp"

#include "toric/dd.hpp"
#include "toric/error.hpp"
#include "toric/linalg.hpp"

#include <algorithm>
#include <optional>

namespace toric {

LatticeFunction LatticeFunction::from(const LatticePolytope& p, std::int64_t scale,
                                      const std::function<Rational(const RatPoint&)>& f) {
  LatticeFunction out;
  out.scale = scale;
  out.points = scaled_lattice_points(p, scale);
  out.values.reserve(out.points.size());
  for (const auto& b : out.points) out.values.push_back(f(scaled_point(b, scale)));
  return out;
}

LatticeFunction LatticeFunction::affine(const LatticePolytope& p, std::int64_t scale, const AffineForm& form) {
  return from(p, scale, [&](const RatPoint& x) { return form(x); });
}

Rational PLFunction::evaluate(const RatPoint& x) const {
  Rational best = cells_.front().form(x);
  for (const auto& c : cells_) best = std::min(best, c.form(x));
  return best;
}

Rational PLFunction::lattice_sum() const {
  Rational s = 0;
  for (const auto& v : values_.values) s += v;
  return s;
}

PLFunction PLFunction::scaled(const Rational& c) const {
  if (c <= 0) throw Error(ErrorKind::InvalidInput, "scaling factor must be positive");
  PLFunction out = *this;
  for (auto& v : out.values_.values) v *= c;
  for (auto& cell : out.cells_) {
    for (auto& x : cell.form.gradient) x *= c;
    cell.form.constant *= c;
  }
  return out;
}

PLFunction concave_envelope(const LatticeFunction& phi) {
  if (phi.points.empty()) throw Error(ErrorKind::DomainMismatch, "lattice function has an empty domain");
  if (phi.values.size() != phi.points.size()) {
    throw Error(ErrorKind::DomainMismatch, "lattice function has " + std::to_string(phi.values.size()) +
                                               " values for " + std::to_string(phi.points.size()) + " points");
  }
  const std::size_t n = phi.points.front().size();
  const std::size_t d = n + 2;  // (w, s, c): <w, b> + s * φ(b) + c >= 0

  std::vector<dd::IntegerVector> rows;
  {
    dd::IntegerVector up(d, Integer(0));
    up[n] = -1;
    rows.push_back(std::move(up));
  }
  for (std::size_t k = 0; k < phi.size(); ++k) {
    RatPoint row = to_rat_point(phi.points[k]);
    row.push_back(phi.values[k]);
    row.emplace_back(1);
    rows.push_back(dd::integral_row(row));
  }
  const auto rays = dd::extreme_rays(rows);

  const Rational scale(phi.scale);
  std::vector<AffineForm> forms;
  for (const auto& r : rays) {
    if (r[n] >= 0) continue;  // vertical facets of P
    const Rational neg_s(-r[n]);
    AffineForm f;
    for (std::size_t c = 0; c < n; ++c) f.gradient.push_back(Rational(r[c]) * scale / neg_s);
    f.constant = Rational(r[n + 1]) / neg_s;
    forms.push_back(std::move(f));
  }
  if (forms.empty()) throw Error(ErrorKind::DomainMismatch, "lattice points are not full-dimensional");

  PLFunction g;
  g.values_.scale = phi.scale;
  g.values_.points = phi.points;
  g.values_.values.resize(phi.size());
  std::vector<RatPoint> xs;
  xs.reserve(phi.size());
  for (std::size_t k = 0; k < phi.size(); ++k) {
    xs.push_back(phi.point(k));
    Rational best = forms.front()(xs.back());
    for (const auto& f : forms) best = std::min(best, f(xs.back()));
    g.values_.values[k] = best;
  }
  for (const auto& f : forms) {
    std::vector<std::size_t> contact;
    std::vector<IntPoint> pts;
    for (std::size_t k = 0; k < phi.size(); ++k) {
      if (f(xs[k]) == phi.values[k]) {
        contact.push_back(k);
        pts.push_back(phi.points[k]);
      }
    }
    for (const auto& s : tri::placing(pts)) {
      PLCell cell{{}, f};
      for (auto local : s) cell.vertices.push_back(contact[local]);
      g.cells_.push_back(std::move(cell));
    }
  }
  return g;
}

bool is_concave(const LatticeFunction& phi) { return concave_envelope(phi).values() == phi.values; }

bool ConcavityConstraint::satisfied_by(const std::vector<Rational>& v) const {
  Rational rhs = 0;
  for (std::size_t j = 0; j < support.size(); ++j) rhs += weights[j] * v[support[j]];
  return v[target] >= rhs;
}

bool ConcavityCone::contains(const std::vector<Rational>& v) const {
  return std::all_of(constraints.begin(), constraints.end(),
                     [&](const ConcavityConstraint& c) { return c.satisfied_by(v); });
}

namespace {

std::int64_t small_det(const std::vector<IntPoint>& m) {
  switch (m.size()) {
    case 0: return 1;
    case 1: return m[0][0];
    case 2: return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    case 3:
      return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
             m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    default: return to_int64(linalg::determinant(m));
  }
}

// Barycentric solver for one affinely independent support.
class SupportFrame {
 public:
  SupportFrame(const std::vector<IntPoint>& pts, const std::vector<std::size_t>& support) : pts_(pts) {
    base_ = pts[support.front()];
    const std::size_t n = base_.size();
    const std::size_t k = support.size() - 1;
    for (std::size_t j = 1; j <= k; ++j) {
      IntPoint d(n);
      for (std::size_t c = 0; c < n; ++c) d[c] = pts[support[j]][c] - base_[c];
      diffs_.push_back(std::move(d));
    }
    // Choose k coordinates with a nonzero minor.
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::vector<std::size_t> rows;
      for (std::size_t c = 0; c < n; ++c)
        if (pick[c]) rows.push_back(c);
      const std::int64_t det = small_det(matrix(rows, std::nullopt, {}));
      if (det != 0) {
        rows_ = std::move(rows);
        det_ = det;
        return;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }

  bool independent() const { return det_ != 0; }

  // Numerators of the barycentric coordinates over det (λ_0 first), or nullopt
  // when q is off the affine hull.
  std::optional<std::vector<std::int64_t>> coordinates(const IntPoint& q) const {
    const std::size_t n = base_.size();
    IntPoint r(n);
    for (std::size_t c = 0; c < n; ++c) r[c] = q[c] - base_[c];
    std::vector<std::int64_t> mu(diffs_.size());
    for (std::size_t j = 0; j < diffs_.size(); ++j) mu[j] = small_det(matrix(rows_, j, r));
    for (std::size_t c = 0; c < n; ++c) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < diffs_.size(); ++j) s += mu[j] * diffs_[j][c];
      if (s != det_ * r[c]) return std::nullopt;
    }
    std::vector<std::int64_t> out{det_};
    for (auto m : mu) {
      out.front() -= m;
      out.push_back(m);
    }
    return out;
  }

  std::int64_t det() const { return det_; }

 private:
  std::vector<IntPoint> matrix(const std::vector<std::size_t>& rows, std::optional<std::size_t> replace,
                               const IntPoint& r) const {
    std::vector<IntPoint> m(rows.size(), IntPoint(diffs_.size()));
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t j = 0; j < diffs_.size(); ++j)
        m[a][j] = (replace && *replace == j) ? r[rows[a]] : diffs_[j][rows[a]];
    return m;
  }

  const std::vector<IntPoint>& pts_;
  IntPoint base_;
  std::vector<IntPoint> diffs_;
  std::vector<std::size_t> rows_;
  std::int64_t det_ = 0;
};

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1;
  for (std::size_t j = 1; j <= k; ++j) r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
  return r;
}

}  // namespace

ConcavityCone concavity_cone(const LatticePolytope& p, std::int64_t scale, std::size_t max_constraints) {
  ConcavityCone cone;
  cone.scale = scale;
  cone.points = scaled_lattice_points(p, scale);
  const auto& pts = cone.points;
  const std::size_t n = p.dim();
  const std::size_t e = pts.size();

  double work = 0;
  for (std::size_t k = 2; k <= n + 1; ++k) work += binomial(e, k) * static_cast<double>(e);
  if (work > 50.0 * static_cast<double>(max_constraints) + 1e8) {
    throw Error(ErrorKind::TooLarge, "concavity cone enumeration over " + std::to_string(e) +
                                         " lattice points exceeds the configured cap");
  }

  for (std::size_t k = 2; k <= n + 1 && k <= e; ++k) {
    std::vector<std::size_t> support(k);
    for (std::size_t j = 0; j < k; ++j) support[j] = j;
    do {
      const SupportFrame frame(pts, support);
      if (!frame.independent()) continue;
      IntPoint lo = pts[support[0]], hi = lo;
      for (auto s : support)
        for (std::size_t c = 0; c < n; ++c) {
          lo[c] = std::min(lo[c], pts[s][c]);
          hi[c] = std::max(hi[c], pts[s][c]);
        }
      std::optional<std::size_t> inner;
      std::vector<std::int64_t> inner_coords;
      bool reject = false;
      for (std::size_t q = 0; q < e && !reject; ++q) {
        if (std::binary_search(support.begin(), support.end(), q)) continue;
        bool in_box = true;
        for (std::size_t c = 0; c < n; ++c)
          if (pts[q][c] < lo[c] || pts[q][c] > hi[c]) in_box = false;
        if (!in_box) continue;
        const auto coords = frame.coordinates(pts[q]);
        if (!coords) continue;
        const std::int64_t sign = frame.det() > 0 ? 1 : -1;
        bool inside = true, interior = true;
        for (auto x : *coords) {
          if (x * sign < 0) inside = false;
          if (x == 0) interior = false;
        }
        if (!inside) continue;
        if (inner || !interior) {
          reject = true;
          break;
        }
        inner = q;
        inner_coords = *coords;
      }
      if (reject || !inner) continue;
      ConcavityConstraint c;
      c.target = *inner;
      c.support = support;
      for (auto x : inner_coords) c.weights.push_back(make_rational(x, frame.det()));
      cone.constraints.push_back(std::move(c));
      if (cone.constraints.size() > max_constraints) {
        throw Error(ErrorKind::TooLarge, "concavity cone needs more than " + std::to_string(max_constraints) +
                                             " constraints (raise --max-constraints)");
      }
    } while (next_combination(support, e));
  }
  std::sort(cone.constraints.begin(), cone.constraints.end(),
            [](const ConcavityConstraint& a, const ConcavityConstraint& b) {
              return std::tie(a.target, a.support) < std::tie(b.target, b.support);
            });
  return cone;
}

}  // namespace toric
