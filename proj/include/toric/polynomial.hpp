#pragma once

#include "toric/rational.hpp"

#include <string>
#include <vector>

namespace toric {

/// Univariate polynomial with rational coefficients, lowest power first,
/// trailing zeros trimmed (the zero polynomial has no coefficients).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, std::size_t power);

  /// Unique polynomial of degree < nodes.size() through the samples.
  static Polynomial interpolate(const std::vector<Rational>& nodes, const std::vector<Rational>& values);

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(std::size_t power) const;
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Rational operator()(const Rational& x) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// "4*i^2 + 4*i + 1" in the given variable.
  std::string to_string(const std::string& var = "i") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// R^n-valued polynomial stored per component.
class VectorPolynomial {
 public:
  VectorPolynomial() = default;
  explicit VectorPolynomial(std::vector<Polynomial> components) : components_(std::move(components)) {}

  static VectorPolynomial interpolate(const std::vector<Rational>& nodes, const std::vector<RatPoint>& values);

  std::size_t dim() const { return components_.size(); }
  const Polynomial& component(std::size_t c) const { return components_[c]; }
  const std::vector<Polynomial>& components() const { return components_; }
  int degree() const;
  bool is_zero() const;
  RatPoint operator()(const Rational& x) const;
  /// Coefficient vectors for powers 0..degree.
  std::vector<RatPoint> coefficient_vectors() const;

  friend bool operator==(const VectorPolynomial&, const VectorPolynomial&) = default;

  /// "(a, b)*i^2 + (c, d)*i + ..." rendering.
  std::string to_string(const std::string& var = "i") const;

 private:
  std::vector<Polynomial> components_;
};

}  // namespace toric
