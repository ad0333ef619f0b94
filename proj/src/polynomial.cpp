#include "toric/polynomial.hpp"

#include "toric/error.hpp"

#include <algorithm>

namespace toric {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t power) {
  std::vector<Rational> v(power + 1, Rational(0));
  v[power] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coefficient(std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : Rational(0);
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Rational> v(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) v[k] += coeffs_[k];
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) v[k] += o.coeffs_[k];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Rational(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> v(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (std::size_t a = 0; a < coeffs_.size(); ++a)
    for (std::size_t b = 0; b < o.coeffs_.size(); ++b) v[a + b] += coeffs_[a] * o.coeffs_[b];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const Rational& c) const {
  std::vector<Rational> v = coeffs_;
  for (auto& x : v) x *= c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::interpolate(const std::vector<Rational>& nodes, const std::vector<Rational>& values) {
  if (nodes.size() != values.size() || nodes.empty()) {
    throw Error(ErrorKind::InvalidInput, "interpolation needs matching, non-empty node and value lists");
  }
  // Newton divided differences, then expansion into the monomial basis.
  const std::size_t m = nodes.size();
  std::vector<Rational> dd = values;
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t k = m - 1; k >= level; --k) {
      const Rational gap = nodes[k] - nodes[k - level];
      if (gap == 0) throw Error(ErrorKind::InvalidInput, "repeated interpolation node");
      dd[k] = (dd[k] - dd[k - 1]) / gap;
    }
  }
  Polynomial result = Polynomial::constant(dd[m - 1]);
  for (std::size_t k = m - 1; k-- > 0;) {
    result = result * Polynomial({-nodes[k], Rational(1)}) + Polynomial::constant(dd[k]);
  }
  return result;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const bool unit = mag == 1 && k > 0;
    if (!unit) out += toric::to_string(mag);
    if (k > 0) {
      if (!unit) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

VectorPolynomial VectorPolynomial::interpolate(const std::vector<Rational>& nodes, const std::vector<RatPoint>& values) {
  if (values.empty()) throw Error(ErrorKind::InvalidInput, "interpolation needs samples");
  std::vector<Polynomial> comps;
  for (std::size_t c = 0; c < values.front().size(); ++c) {
    std::vector<Rational> ys;
    for (const auto& v : values) ys.push_back(v[c]);
    comps.push_back(Polynomial::interpolate(nodes, ys));
  }
  return VectorPolynomial(std::move(comps));
}

int VectorPolynomial::degree() const {
  int d = -1;
  for (const auto& p : components_) d = std::max(d, p.degree());
  return d;
}

bool VectorPolynomial::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

RatPoint VectorPolynomial::operator()(const Rational& x) const {
  RatPoint out;
  for (const auto& p : components_) out.push_back(p(x));
  return out;
}

std::vector<RatPoint> VectorPolynomial::coefficient_vectors() const {
  std::vector<RatPoint> out;
  for (int k = 0; k <= degree(); ++k) {
    RatPoint v;
    for (const auto& p : components_) v.push_back(p.coefficient(static_cast<std::size_t>(k)));
    out.push_back(std::move(v));
  }
  return out;
}

std::string VectorPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  const auto coeffs = coefficient_vectors();
  std::string out;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    if (std::all_of(coeffs[k].begin(), coeffs[k].end(), [](const Rational& x) { return x == 0; })) continue;
    if (!out.empty()) out += " + ";
    out += toric::to_string(coeffs[k]);
    if (k > 0) out += "*" + var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

}  // namespace toric
