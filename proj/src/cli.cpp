#include "toric/cli.hpp"

#include "toric/error.hpp"
#include "toric/fixtures.hpp"
#include "toric/futaki.hpp"
#include "toric/io.hpp"
#include "toric/measures.hpp"
#include "toric/obstruction.hpp"
#include "toric/stability.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace toric::cli {

namespace {

using io::Json;

constexpr const char* kSchema = "toric-stab/report-v1";

struct Job {
  std::string command;
  std::string polytope_path;
  std::string fixture;
  std::optional<std::string> divisors;
  std::string format = "text";
  std::int64_t i = 1;
  bool poly = false;
  std::string mode = "linear";
  std::uint64_t seed = 0;
  std::size_t max_constraints = 1'000'000;
  std::size_t max_iterations = 5000;
  std::size_t samples = 256;
  std::string witness_path;
  std::string h;
  std::int64_t k = 1;
  std::int64_t imax = 6;
  std::string name;
};

struct Loaded {
  LatticePolytope polytope;
  std::vector<DivisorSpec> divisors;
  Json source;
};

std::string fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool is_file(const std::string& path) {
  std::error_code ec;
  return std::filesystem::is_regular_file(path, ec);
}

Loaded load(const Job& job) {
  if (job.polytope_path.empty() == job.fixture.empty()) {
    throw Error(ErrorKind::InvalidInput, "--polytope/--fixture: exactly one input is required");
  }
  Loaded l;
  if (!job.fixture.empty()) {
    auto f = load_fixture(job.fixture);
    l.polytope = std::move(f.polytope);
    l.divisors = std::move(f.divisors);
    l.source = Json{{"fixture", job.fixture}};
  } else {
    auto in = io::parse_polytope(io::read_file(job.polytope_path));
    l.polytope = std::move(in.polytope);
    l.divisors = std::move(in.divisors);
    l.source = Json{{"file", std::filesystem::path(job.polytope_path).filename().string()}};
  }
  if (job.divisors) {
    if (is_file(*job.divisors)) {
      const Json j = Json::parse(io::read_file(*job.divisors), nullptr, false);
      if (j.is_discarded()) throw Error(ErrorKind::InvalidInput, "divisors: malformed JSON");
      l.divisors = io::parse_divisors(j.is_object() && j.contains("divisors") ? j["divisors"] : j);
    } else {
      l.divisors = io::parse_divisors_inline(*job.divisors);
    }
  }
  validate_divisors(l.polytope, l.divisors);
  return l;
}

ConvexPLFunction load_h(const Job& job, const LatticePolytope& p) {
  if (job.h.empty()) throw Error(ErrorKind::InvalidInput, "--h: a PL file or an affine form \"u1,...,un[;c]\" is required");
  if (is_file(job.h)) return ConvexPLFunction::from_values(io::parse_pl(io::read_file(job.h), p));
  const auto semi = job.h.find(';');
  AffineForm form;
  std::stringstream s(job.h.substr(0, semi));
  std::string item;
  while (std::getline(s, item, ',')) form.gradient.push_back(parse_rational(item));
  form.constant = semi == std::string::npos ? Rational(0) : parse_rational(job.h.substr(semi + 1));
  if (form.gradient.size() != p.dim()) {
    throw Error(ErrorKind::InvalidInput, "--h: gradient has " + std::to_string(form.gradient.size()) +
                                             " entries, expected " + std::to_string(p.dim()));
  }
  return ConvexPLFunction::affine(p, form);
}

std::string h_argument(const Job& job) {
  return is_file(job.h) ? "file:fnv1a64:" + fnv1a(io::read_file(job.h)) : job.h;
}

Json interval_note(const Loaded& l) {
  if (l.polytope.dim() != 1 || l.divisors.empty()) return nullptr;
  return "interval convention: with endpoint divisors Q_i = (1/2)(i+1)(beta_0 - beta_inf) on [0,1] and "
         "(2i+1)(beta_0 - beta_inf) on [-1,1]; both vanish identically iff beta_0 = beta_inf";
}

Json validate_results(const Loaded& l, Json& warnings) {
  const auto& p = l.polytope;
  Json vertices = Json::array();
  for (const auto& v : p.vertices()) vertices.push_back(io::int_point(v));
  Json facet_list = Json::array();
  for (const auto& f : facets(p)) {
    Json fv = Json::array();
    for (const auto& v : f.vertices) fv.push_back(io::int_point(v));
    facet_list.push_back(Json{{"index", f.index},
                          {"normal", io::int_point(f.halfspace.normal)},
                          {"offset", f.halfspace.offset},
                          {"vertices", fv}});
  }
  const auto delzant = is_delzant(p);
  Json failures = Json::array();
  for (const auto& f : delzant.failures) {
    Json dirs = Json::array();
    for (const auto& d : f.edge_directions) dirs.push_back(io::int_point(d));
    failures.push_back(
        Json{{"vertex", io::int_point(f.vertex)}, {"edge_directions", dirs}, {"determinant", f.determinant.str()}});
  }
  if (!delzant.is_delzant) warnings.push_back("polytope is not Delzant");
  return Json{{"dim", p.dim()},
              {"vertices", vertices},
              {"facets", facet_list},
              {"delzant", delzant.is_delzant},
              {"delzant_failures", failures},
              {"divisors", io::divisors_json(l.divisors)}};
}

Json q_results(const Job& job, const Loaded& l) {
  if (!job.poly) {
    const auto q = q_vector(l.polytope, l.divisors, job.i);
    const bool zero = std::all_of(q.begin(), q.end(), [](const Rational& x) { return x == 0; });
    return Json{{"i", job.i}, {"q", io::rational_point(q)}, {"vanishes", zero}};
  }
  const auto v = asymptotic_verdict(l.polytope, l.divisors);
  const auto e = ehrhart_polynomial(l.polytope);
  Json r{{"q_polynomial", io::q_polynomial_json(v.q)},
         {"rendering", "Q_i = " + (v.q.is_zero() ? std::string("0") : v.q.to_string("i"))},
         {"ehrhart", io::polynomial_json(e)},
         {"ehrhart_rendering", "E(i) = " + e.to_string("i")},
         {"verdict", v.verdict},
         {"detail", v.detail}};
  if (v.obstructed_at) r["obstructed_at"] = *v.obstructed_at;
  return r;
}

Json decide_results(const Job& job, const Loaded& l, Json& warnings, int& code) {
  StabilityOptions options;
  options.mode = parse_search_mode(job.mode);
  options.seed = job.seed;
  options.samples = job.samples;
  options.max_constraints = job.max_constraints;
  options.max_iterations = job.max_iterations;
  const auto v = decide_semistable(l.polytope, l.divisors, job.i, options);
  for (const auto& w : v.warnings) warnings.push_back(w);
  if (!v.certified || v.decision == Decision::Inconclusive) warnings.push_back("not a certificate");
  if (v.cap_exceeded) code = CapExceeded;
  Json r{{"i", job.i},
         {"mode", to_string(v.mode)},
         {"decision", to_string(v.decision)},
         {"certified", v.certified},
         {"cap_exceeded", v.cap_exceeded},
         {"q", io::rational_point(v.q)}};
  if (v.margin_min) r["margin_min"] = io::rational(*v.margin_min);
  if (v.minimizer) r["minimizer"] = io::rational_point(*v.minimizer);
  if (v.mode == SearchMode::Exact) {
    r["cone_constraints"] = v.cone_constraints;
    r["iterations"] = v.iterations;
  }
  if (v.samples) r["samples"] = v.samples;
  if (v.witness) {
    r["witness_margin"] = io::rational(*v.witness_margin);
    r["witness"] = io::pl_json(v.witness->lattice_values());
    if (!job.witness_path.empty()) {
      std::ofstream f(job.witness_path, std::ios::binary);
      if (!f) throw Error(ErrorKind::InvalidInput, "--witness: cannot write '" + job.witness_path + "'");
      f << io::pl_json(v.witness->lattice_values()).dump(2) << "\n";
    }
  }
  return r;
}

std::string direction_note(const Rational& lf) {
  if (lf > 0) return "LF(h) > 0: the margin of -h is negative for all large i, so h destabilizes";
  if (lf < 0) return "LF(h) < 0: h does not destabilize";
  return "LF(h) = 0: h is neutral";
}

Json futaki_results(const Job& job, const Loaded& l) {
  const auto h = load_h(job, l.polytope);
  const auto lf = log_futaki_toric(l.polytope, l.divisors, h);
  const auto c = expansion_coefficients(l.polytope, l.divisors, h);
  Json facets = Json::array();
  for (std::size_t t = 0; t < l.divisors.size(); ++t) {
    facets.push_back(Json{{"facet", l.divisors[t].facet},
                          {"beta", io::rational(l.divisors[t].beta)},
                          {"a0_tilde", io::rational(c.a0_tilde[t])},
                          {"b0_tilde", io::rational(c.b0_tilde[t])}});
  }
  const auto fe = futaki_from_expansions(c, l.divisors);
  return Json{{"h_scale", h.scale()},
              {"log_futaki", io::rational(lf)},
              {"expansion",
               Json{{"R", c.ceiling.str()},
                    {"a0", io::rational(c.a0)},
                    {"a1", io::rational(c.a1)},
                    {"b0", io::rational(c.b0)},
                    {"b1", io::rational(c.b1)},
                    {"divisors", facets}}},
              {"futaki_from_expansions", io::rational(fe)},
              {"relation", fe == -lf ? "futaki_from_expansions = -log_futaki" : "relation violated"},
              {"direction", direction_note(lf)}};
}

Json consistency_results(const Job& job, const Loaded& l, int& code) {
  const auto h = load_h(job, l.polytope);
  if (job.imax < 1) throw Error(ErrorKind::InvalidInput, "--imax: must be positive");
  std::vector<std::int64_t> is;
  for (std::int64_t i = 1; i <= job.imax; ++i) is.push_back(i);
  const auto rep = asymptotic_consistency_check(l.polytope, l.divisors, h, job.k, is);
  Json margins = Json::array();
  for (std::size_t t = 0; t < rep.scales.size(); ++t)
    margins.push_back(Json{{"i", rep.scales[t]}, {"margin", io::rational(rep.margins[t])}});
  if (!rep.consistent) code = VerificationFailure;
  Json r{{"k", rep.k},
         {"log_futaki", io::rational(rep.log_futaki)},
         {"futaki_from_expansions", io::rational(rep.expansion_futaki)},
         {"margins", margins},
         {"margin_polynomial", io::polynomial_json(rep.margin_polynomial)},
         {"margin_rendering", "M(i) = " + (rep.margin_polynomial.is_zero() ? std::string("0")
                                                                          : rep.margin_polynomial.to_string("i"))}};
  if (rep.fitted_polynomial) r["fitted_polynomial"] = io::polynomial_json(*rep.fitted_polynomial);
  r["leading_ratio"] = io::rational(rep.leading_ratio);
  r["implies_instability"] = rep.implies_instability;
  r["status"] = rep.consistent ? "PASS" : "FAIL";
  return r;
}

void render(std::ostream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [&](const Json& v) {
    if (!v.is_array()) return false;
    for (const auto& e : v)
      if (e.is_object() || (e.is_array() && !std::all_of(e.begin(), e.end(), [](const Json& x) { return x.is_primitive(); })))
        return false;
    return true;
  };
  auto inline_array = [&](const Json& v) {
    std::string s = "[";
    bool first = true;
    for (const auto& e : v) {
      if (!first) s += ", ";
      first = false;
      if (e.is_array()) {
        s += "(";
        for (std::size_t k = 0; k < e.size(); ++k) s += (k ? ", " : "") + scalar(e[k]);
        s += ")";
      } else {
        s += scalar(e);
      }
    }
    return s + "]";
  };
  for (const auto& [key, v] : j.items()) {
    if (v.is_primitive()) {
      out << pad << key << ": " << scalar(v) << "\n";
    } else if (flat(v)) {
      out << pad << key << ": " << inline_array(v) << "\n";
    } else if (v.is_object()) {
      out << pad << key << ":\n";
      render(out, v, indent + 2);
    } else {
      out << pad << key << ":\n";
      for (const auto& e : v) {
        if (e.is_object()) {
          std::ostringstream item;
          render(item, e, indent + 4);
          std::string text = item.str();
          text.replace(static_cast<std::size_t>(indent) + 2, 2, "- ");
          out << text;
        } else {
          out << pad << "  - " << (e.is_array() ? inline_array(e) : scalar(e)) << "\n";
        }
      }
    }
  }
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::TooLarge: return CapExceeded;
    case ErrorKind::VerificationFailed: return VerificationFailure;
    default: return InputError;
  }
}

int execute(const Job& job, std::ostream& out) {
  if (job.command == "examples") {
    const auto f = load_fixture(job.name);
    Json j{{"fixture", f.name}, {"description", f.description}};
    const Json body = io::polytope_json(f.polytope, f.divisors);
    for (const auto& [key, v] : body.items()) j[key] = v;
    out << j.dump(2) << "\n";
    return Ok;
  }
  const auto l = load(job);
  Json arguments{{"format", job.format}};
  if (job.divisors) arguments["divisors"] = *job.divisors;
  Json warnings = Json::array();
  Json notes = Json::array();
  Json results;
  int code = Ok;
  if (job.command == "validate") {
    results = validate_results(l, warnings);
  } else if (job.command == "count") {
    arguments["i"] = job.i;
    if (job.i < 1) throw Error(ErrorKind::InvalidInput, "--i: must be a positive integer");
    results = Json{{"i", job.i}, {"count", lattice_count(l.polytope, job.i)}};
  } else if (job.command == "measures") {
    results = io::measure_report_json(l.polytope, measure_report(l.polytope));
  } else if (job.command == "q") {
    if (job.poly) arguments["poly"] = true;
    else arguments["i"] = job.i;
    results = q_results(job, l);
    if (auto note = interval_note(l); !note.is_null()) notes.push_back(note);
  } else if (job.command == "decide") {
    arguments.update(Json{{"i", job.i}, {"mode", job.mode}, {"seed", job.seed}, {"samples", job.samples},
                          {"max_constraints", job.max_constraints}, {"max_iterations", job.max_iterations}});
    results = decide_results(job, l, warnings, code);
    if (auto note = interval_note(l); !note.is_null()) notes.push_back(note);
  } else if (job.command == "futaki") {
    arguments["h"] = h_argument(job);
    results = futaki_results(job, l);
  } else if (job.command == "futaki-consistency") {
    arguments.update(Json{{"h", h_argument(job)}, {"k", job.k},
                          {"imax", job.imax}});
    results = consistency_results(job, l, code);
  }

  const Json canonical = io::polytope_json(l.polytope, l.divisors);
  Json report{{"schema", kSchema},
              {"command", job.command},
              {"arguments", arguments},
              {"inputs_digest", "fnv1a64:" + fnv1a(job.command + "\n" + canonical.dump() + "\n" + arguments.dump())},
              {"input", Json{{"source", l.source}, {"polytope", canonical}}},
              {"results", results},
              {"warnings", warnings},
              {"notes", notes}};
  if (job.format == "json") {
    out << report.dump(2) << "\n";
  } else {
    report.erase("input");
    render(out, report, 0);
  }
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Job job;
  CLI::App app{"Exact toric log Chow stability toolkit", "toric-stab"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.add_option("--polytope", job.polytope_path, "polytope JSON file");
  app.add_option("--fixture", job.fixture, "built-in fixture name");
  app.add_option("--divisors", job.divisors, "divisor JSON file or inline FACET:BETA,...");
  app.add_option("--format", job.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto sub = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->set_help_flag("--help", "print this help and exit");
    s->fallthrough();
    s->callback([&job, name] { job.command = name; });
    return s;
  };
  sub("validate", "check a polytope and report its combinatorics");
  auto* count = sub("count", "number of points of P on (Z/i)^n");
  count->add_option("--i", job.i, "scale")->required();
  sub("measures", "volumes and moments of P and its facets");
  auto* q = sub("q", "log Chow obstruction vector Q_i or its polynomial");
  auto* q_i = q->add_option("--i", job.i, "scale");
  auto* q_poly = q->add_flag("--poly", job.poly, "Q as a polynomial in i, with the asymptotic verdict");
  q_i->excludes(q_poly);
  q->callback([&job, q_i, q_poly] {
    job.command = "q";
    if (q_i->count() == 0 && q_poly->count() == 0) throw CLI::ValidationError("q", "one of --i and --poly is required");
  });
  auto* decide = sub("decide", "decide semistability at scale i");
  decide->add_option("--i", job.i, "scale")->required();
  decide->add_option("--mode", job.mode, "exact, linear or sampled")->check(CLI::IsMember({"exact", "linear", "sampled"}));
  decide->add_option("--seed", job.seed, "seed for sampled search");
  decide->add_option("--samples", job.samples, "number of random samples");
  decide->add_option("--max-constraints", job.max_constraints, "cap on concavity constraints");
  decide->add_option("--max-iterations", job.max_iterations, "cap on cutting-plane rounds");
  decide->add_option("--witness", job.witness_path, "write the witness PL function here");
  auto* futaki = sub("futaki", "log Futaki invariant of a convex PL function");
  futaki->add_option("--h", job.h, "PL file or affine form u1,...,un[;c]")->required();
  auto* cons = sub("futaki-consistency", "compare margins at scales i k with the log Futaki invariant");
  cons->add_option("--h", job.h, "PL file or affine form u1,...,un[;c]")->required();
  cons->add_option("--k", job.k, "crease scale multiple");
  cons->add_option("--imax", job.imax, "largest i");
  auto* ex = sub("examples", "print a built-in fixture");
  ex->add_option("name", job.name, "fixture name")->required();

  std::vector<std::string> argv_store{"toric-stab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? Ok : InputError;
  }

  try {
    return execute(job, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  }
}

}  // namespace toric::cli
