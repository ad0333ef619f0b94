#pragma once

#include "toric/envelope.hpp"
#include "toric/geometry.hpp"
#include "toric/measures.hpp"
#include "toric/obstruction.hpp"
#include "toric/polynomial.hpp"

#include <json.hpp>

#include <string>
#include <vector>

// File formats. Rationals are always strings "p/q" in lowest terms.
namespace toric::io {

using Json = nlohmann::ordered_json;

struct PolytopeInput {
  LatticePolytope polytope;
  std::vector<DivisorSpec> divisors;
  bool has_divisors = false;
};

std::string read_file(const std::string& path);

/// {"dim", "halfspaces": [{"normal", "offset"}]} or {"vertices": [...]}, plus
/// optional "divisors": [{"facet", "beta"}]. Error messages name the field.
PolytopeInput parse_polytope(const std::string& text);
Json polytope_json(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors);

std::vector<DivisorSpec> parse_divisors(const Json& j, const std::string& where = "divisors");
/// "0:13/14,1:13/14"; "" and "none" mean no divisors.
std::vector<DivisorSpec> parse_divisors_inline(const std::string& text);
Json divisors_json(const std::vector<DivisorSpec>& divisors);

/// {"scale", "values": [[[coords...], "value"], ...]} on P's lattice at that
/// scale; every lattice point must appear exactly once (Error(DomainMismatch)).
LatticeFunction parse_pl(const std::string& text, const LatticePolytope& p);
Json pl_json(const LatticeFunction& f);

Json rational(const Rational& r);
Json rational_point(const RatPoint& v);
Json int_point(const IntPoint& v);
Json measure_report_json(const LatticePolytope& p, const MeasureReport& r);
/// {"degree", "coefficients": [[...], ...]} lowest power first.
Json q_polynomial_json(const VectorPolynomial& q);
Json polynomial_json(const Polynomial& p);

}  // namespace toric::io
