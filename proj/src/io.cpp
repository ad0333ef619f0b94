#include "toric/io.hpp"

#include "toric/error.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace toric::io {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::InvalidInput, where + ": " + what);
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(what, std::string("malformed JSON (") + e.what() + ")");
  }
}

std::int64_t get_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<std::int64_t>();
}

Rational get_rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) bad(where, "floats are not accepted; write the value as a string \"p/q\"");
  if (!j.is_string()) bad(where, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    bad(where, e.what());
  }
}

IntPoint get_int_point(const Json& j, const std::string& where, std::optional<std::size_t> dim) {
  if (!j.is_array()) bad(where, "expected an array of integers");
  if (dim && j.size() != *dim) {
    bad(where, "has length " + std::to_string(j.size()) + ", expected " + std::to_string(*dim));
  }
  IntPoint p;
  for (std::size_t k = 0; k < j.size(); ++k) p.push_back(get_int(j[k], where + "[" + std::to_string(k) + "]"));
  return p;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

PolytopeInput parse_polytope(const std::string& text) {
  const Json j = parse_json(text, "polytope");
  if (!j.is_object()) bad("polytope", "expected a JSON object");
  const bool has_h = j.contains("halfspaces");
  const bool has_v = j.contains("vertices");
  if (has_h == has_v) bad("polytope", "exactly one of \"halfspaces\" and \"vertices\" must be present");
  PolytopeInput in;
  if (has_h) {
    if (!j.contains("dim")) bad("dim", "required with \"halfspaces\"");
    const std::int64_t dim = get_int(j["dim"], "dim");
    if (dim < 1) bad("dim", "must be positive");
    const Json& hs = j["halfspaces"];
    if (!hs.is_array()) bad("halfspaces", "expected an array");
    std::vector<HalfSpace> halfspaces;
    for (std::size_t k = 0; k < hs.size(); ++k) {
      const std::string where = "halfspaces[" + std::to_string(k) + "]";
      if (!hs[k].is_object() || !hs[k].contains("normal") || !hs[k].contains("offset")) {
        bad(where, "expected {\"normal\": [...], \"offset\": int}");
      }
      halfspaces.push_back({get_int_point(hs[k]["normal"], where + ".normal", static_cast<std::size_t>(dim)),
                            get_int(hs[k]["offset"], where + ".offset")});
    }
    in.polytope = vertices_from_halfspaces(halfspaces, static_cast<std::size_t>(dim));
  } else {
    const Json& vs = j["vertices"];
    if (!vs.is_array() || vs.empty()) bad("vertices", "expected a non-empty array");
    std::vector<IntPoint> points;
    for (std::size_t k = 0; k < vs.size(); ++k) {
      points.push_back(get_int_point(vs[k], "vertices[" + std::to_string(k) + "]",
                                     points.empty() ? std::nullopt : std::optional(points.front().size())));
    }
    if (j.contains("dim") && get_int(j["dim"], "dim") != static_cast<std::int64_t>(points.front().size())) {
      bad("dim", "does not match the vertex coordinates");
    }
    in.polytope = hull_of_vertices(points);
  }
  if (j.contains("divisors")) {
    in.divisors = parse_divisors(j["divisors"]);
    in.has_divisors = true;
    validate_divisors(in.polytope, in.divisors);
  }
  return in;
}

Json polytope_json(const LatticePolytope& p, const std::vector<DivisorSpec>& divisors) {
  Json j;
  j["dim"] = p.dim();
  Json hs = Json::array();
  for (const auto& h : p.halfspaces()) hs.push_back(Json{{"normal", int_point(h.normal)}, {"offset", h.offset}});
  j["halfspaces"] = hs;
  j["divisors"] = divisors_json(divisors);
  return j;
}

std::vector<DivisorSpec> parse_divisors(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of {\"facet\", \"beta\"}");
  std::vector<DivisorSpec> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    if (!j[k].is_object() || !j[k].contains("facet") || !j[k].contains("beta")) {
      bad(at, "expected {\"facet\": int, \"beta\": \"p/q\"}");
    }
    const std::int64_t facet = get_int(j[k]["facet"], at + ".facet");
    if (facet < 0) throw Error(ErrorKind::BadFacetIndex, at + ".facet: must be non-negative");
    out.push_back({static_cast<std::size_t>(facet), get_rational(j[k]["beta"], at + ".beta")});
  }
  return out;
}

std::vector<DivisorSpec> parse_divisors_inline(const std::string& text) {
  std::vector<DivisorSpec> out;
  if (text.empty() || text == "none") return out;
  std::stringstream s(text);
  std::string item;
  std::size_t k = 0;
  while (std::getline(s, item, ',')) {
    const std::string at = "divisors[" + std::to_string(k++) + "]";
    const auto colon = item.find(':');
    if (colon == std::string::npos) bad(at, "expected FACET:BETA, got '" + item + "'");
    std::int64_t facet = 0;
    try {
      std::size_t used = 0;
      facet = std::stoll(item.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      bad(at + ".facet", "expected an integer, got '" + item.substr(0, colon) + "'");
    }
    if (facet < 0) throw Error(ErrorKind::BadFacetIndex, at + ".facet: must be non-negative");
    out.push_back({static_cast<std::size_t>(facet), get_rational(Json(item.substr(colon + 1)), at + ".beta")});
  }
  return out;
}

Json divisors_json(const std::vector<DivisorSpec>& divisors) {
  Json arr = Json::array();
  for (const auto& d : divisors) arr.push_back(Json{{"facet", d.facet}, {"beta", to_string(d.beta)}});
  return arr;
}

LatticeFunction parse_pl(const std::string& text, const LatticePolytope& p) {
  const Json j = parse_json(text, "PL function");
  if (!j.is_object() || !j.contains("scale") || !j.contains("values")) {
    bad("PL function", "expected {\"scale\": int, \"values\": [...]}");
  }
  const std::int64_t scale = get_int(j["scale"], "scale");
  if (scale < 1) bad("scale", "must be a positive integer");
  const Json& vals = j["values"];
  if (!vals.is_array()) bad("values", "expected an array of [[coords...], \"value\"] pairs");
  std::map<IntPoint, Rational> given;
  for (std::size_t k = 0; k < vals.size(); ++k) {
    const std::string at = "values[" + std::to_string(k) + "]";
    if (!vals[k].is_array() || vals[k].size() != 2 || !vals[k][0].is_array()) {
      bad(at, "expected [[coords...], \"value\"]");
    }
    const Json& coords = vals[k][0];
    if (coords.size() != p.dim()) bad(at, "point has the wrong dimension");
    IntPoint b;
    for (std::size_t c = 0; c < coords.size(); ++c) {
      const Rational x = get_rational(coords[c], at + "[0][" + std::to_string(c) + "]") * scale;
      if (!is_integer(x)) {
        throw Error(ErrorKind::DomainMismatch, at + ": point is not on the lattice (Z/" + std::to_string(scale) + ")^n");
      }
      b.push_back(to_int64(numerator(x)));
    }
    if (!given.emplace(b, get_rational(vals[k][1], at + "[1]")).second) {
      throw Error(ErrorKind::DomainMismatch, at + ": point listed twice");
    }
  }
  LatticeFunction f;
  f.scale = scale;
  f.points = scaled_lattice_points(p, scale);
  for (const auto& b : f.points) {
    const auto it = given.find(b);
    if (it == given.end()) {
      throw Error(ErrorKind::DomainMismatch, "values: missing lattice point " + to_string(scaled_point(b, scale)));
    }
    f.values.push_back(it->second);
  }
  if (given.size() != f.points.size()) throw Error(ErrorKind::DomainMismatch, "values: point outside the polytope");
  return f;
}

Json pl_json(const LatticeFunction& f) {
  Json vals = Json::array();
  for (std::size_t k = 0; k < f.size(); ++k) vals.push_back(Json::array({rational_point(f.point(k)), rational(f.values[k])}));
  return Json{{"scale", f.scale}, {"values", vals}};
}

Json rational(const Rational& r) { return to_string(r); }

Json rational_point(const RatPoint& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json int_point(const IntPoint& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

Json measure_report_json(const LatticePolytope& p, const MeasureReport& r) {
  Json facets = Json::array();
  for (const auto& f : r.facets) {
    const auto& h = p.halfspaces()[f.index];
    facets.push_back(Json{{"index", f.index},
                          {"normal", int_point(h.normal)},
                          {"offset", h.offset},
                          {"volume", rational(f.volume)},
                          {"moment", rational_point(f.moment)}});
  }
  return Json{{"volume", rational(r.volume)},
              {"moment", rational_point(r.moment)},
              {"boundary_volume", rational(r.boundary_volume)},
              {"facets", facets}};
}

Json q_polynomial_json(const VectorPolynomial& q) {
  Json coeffs = Json::array();
  for (const auto& c : q.coefficient_vectors()) coeffs.push_back(rational_point(c));
  return Json{{"degree", q.degree()}, {"coefficients", coeffs}};
}

Json polynomial_json(const Polynomial& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(rational(c));
  return Json{{"degree", p.degree()}, {"coefficients", coeffs}};
}

}  // namespace toric::io
