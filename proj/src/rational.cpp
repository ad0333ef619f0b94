#include "toric/rational.hpp"

#include "toric/error.hpp"

#include <cctype>
#include <limits>

namespace toric {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::LowDimensional: return "LowDimensional";
    case ErrorKind::NonIntegralVertex: return "NonIntegralVertex";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::BadFacetIndex: return "BadFacetIndex";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::ScaleMismatch: return "ScaleMismatch";
    case ErrorKind::NotConvex: return "NotConvex";
    case ErrorKind::CreaseMismatch: return "CreaseMismatch";
    case ErrorKind::UnknownFixture: return "UnknownFixture";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

std::string to_string(const Rational& r) { return r.str(); }

std::string to_string(const RatPoint& p) {
  std::string out = "(";
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) out += ", ";
    out += to_string(p[k]);
  }
  return out + ")";
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) {
    throw Error(ErrorKind::InvalidInput, "malformed rational '" + std::string(whole) + "'");
  }
  for (std::size_t k = pos; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw Error(ErrorKind::InvalidInput, "malformed rational '" + std::string(whole) + "'");
    }
  }
  Integer value(std::string(text.substr(pos)));
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const Integer num = parse_integer(text.substr(0, slash), text);
  const Integer den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

RatPoint to_rat_point(const IntPoint& p) {
  RatPoint out;
  out.reserve(p.size());
  for (auto x : p) out.emplace_back(x);
  return out;
}

RatPoint scaled_point(const IntPoint& p, std::int64_t scale) {
  RatPoint out;
  out.reserve(p.size());
  for (auto x : p) out.push_back(make_rational(x, scale));
  return out;
}

Rational dot(const RatPoint& a, const RatPoint& b) {
  Rational s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

Rational dot(const IntPoint& a, const RatPoint& b) {
  Rational s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += Rational(a[k]) * b[k];
  return s;
}

RatPoint zero_point(std::size_t dim) { return RatPoint(dim, Rational(0)); }

void add_scaled(RatPoint& acc, const RatPoint& x, const Rational& s) {
  for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += s * x[k];
}

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

Integer floor(const Rational& r) {
  Integer num = boost::multiprecision::numerator(r);
  Integer den = boost::multiprecision::denominator(r);
  Integer q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

Integer ceil(const Rational& r) { return -floor(Rational(-r)); }

std::int64_t to_int64(const Integer& z) {
  if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorKind::InvalidInput, "integer out of 64-bit range: " + z.str());
  }
  return z.convert_to<std::int64_t>();
}

}  // namespace toric
