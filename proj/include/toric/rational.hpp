#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace toric {

// Expression templates off: values are stored and passed around freely.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

using RatPoint = std::vector<Rational>;
using IntPoint = std::vector<std::int64_t>;

/// Canonical text form: "p/q" in lowest terms, "-p/q" for negatives, "p" for integers.
std::string to_string(const Rational& r);
std::string to_string(const RatPoint& p);

/// Parses "p", "-p", "p/q". Throws Error(InvalidInput) on anything else or q == 0.
Rational parse_rational(std::string_view text);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(Integer(num), Integer(den));
}

RatPoint to_rat_point(const IntPoint& p);
/// Componentwise p / scale.
RatPoint scaled_point(const IntPoint& p, std::int64_t scale);

Rational dot(const RatPoint& a, const RatPoint& b);
Rational dot(const IntPoint& a, const RatPoint& b);
RatPoint zero_point(std::size_t dim);
void add_scaled(RatPoint& acc, const RatPoint& x, const Rational& s);

bool is_integer(const Rational& r);
Integer floor(const Rational& r);
Integer ceil(const Rational& r);

/// Clamps a GMP integer into int64; throws Error(InvalidInput) on overflow.
std::int64_t to_int64(const Integer& z);

}  // namespace toric
