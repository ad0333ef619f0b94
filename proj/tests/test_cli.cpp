#include "support.hpp"

#include "toric/cli.hpp"
#include "toric/io.hpp"

#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using toric::io::Json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = toric::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json json_of(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  const auto r = run(args);
  REQUIRE(r.code == 0);
  return Json::parse(r.out);
}

class TempFile {
 public:
  explicit TempFile(const std::string& text) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("toric-stab-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + ".json");
    std::ofstream(path_) << text;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("fixture dump") {
    const auto r = run({"examples", "cp1-unit"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["dim"] == 1);
    CHECK(j["divisors"][0]["beta"] == "13/14");
    CHECK(j["divisors"][1]["beta"] == "13/14");
    CHECK(run({"examples", "nope"}).code == 2);
  }

  TEST_CASE("round trip through a file") {
    for (const auto& name : testing::fixture_list()) {
      TempFile f(run({"examples", name}).out);
      for (const std::vector<std::string>& cmd : std::vector<std::vector<std::string>>{
               {"q", "--poly"}, {"measures"}, {"decide", "--i", "2"}, {"count", "--i", "3"}}) {
        auto a = cmd, b = cmd;
        a.insert(a.begin(), {"--fixture", name});
        b.insert(b.begin(), {"--polytope", f.path()});
        CAPTURE(name);
        CHECK(json_of(a)["results"] == json_of(b)["results"]);
      }
    }
  }

  TEST_CASE("reports are deterministic") {
    const std::vector<std::string> cmd{"--fixture", "square-sym", "decide", "--i", "2", "--mode", "sampled", "--seed",
                                       "5", "--samples", "40"};
    CHECK(run(cmd).out == run(cmd).out);
    const Json j = json_of(cmd);
    CHECK(j["schema"] == "toric-stab/report-v1");
    CHECK(j["inputs_digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);
  }

  TEST_CASE("commands") {
    const auto q = run({"--fixture", "hirzebruch1", "q", "--poly"});
    CHECK(q.code == 0);
    CHECK(q.out.find("asymptotically Chow unstable") != std::string::npos);

    const Json d = json_of({"--fixture", "cp1-unit", "decide", "--i", "2", "--mode", "exact"});
    CHECK(d["results"]["decision"] == "semistable");
    CHECK(d["results"]["margin_min"] == "0");

    const Json u = json_of({"--fixture", "cp1-unit", "--divisors", "0:1,1:1/2", "decide", "--i", "3"});
    CHECK(u["results"]["decision"] == "unstable");

    const Json f = json_of({"--fixture", "cp1-unit", "--divisors", "1:1/2", "futaki", "--h", "1"});
    CHECK(f["results"]["log_futaki"] == "1/4");
    CHECK(f["results"]["futaki_from_expansions"] == "-1/4");

    const Json c = json_of({"--fixture", "cp1-unit", "--divisors", "1:1/2", "futaki-consistency", "--h", "1", "--k",
                            "1", "--imax", "6"});
    CHECK(c["results"]["status"] == "PASS");

    const Json n = json_of({"--fixture", "hirzebruch1", "count", "--i", "2"});
    CHECK(n["results"]["count"] == 25);
  }

  TEST_CASE("piecewise-linear input file") {
    TempFile h(R"({"scale": 2, "values": [[["0"], "1"], [["1/2"], "0"], [["1"], "1"]]})");
    const Json j = json_of({"--fixture", "cp1-unit", "--divisors", "none", "futaki", "--h", h.path()});
    CHECK(j["results"]["h_scale"] == 2);
    TempFile bad(R"({"scale": 2, "values": [[["0"], "0"], [["1/2"], "1"], [["1"], "0"]]})");
    CHECK(run({"--fixture", "cp1-unit", "futaki", "--h", bad.path()}).code == 2);
    TempFile missing(R"({"scale": 2, "values": [[["0"], "0"], [["1"], "0"]]})");
    CHECK(run({"--fixture", "cp1-unit", "futaki", "--h", missing.path()}).code == 2);
  }

  TEST_CASE("input errors and caps") {
    TempFile floats(R"({"dim": 1, "halfspaces": [{"normal": [1], "offset": 0}, {"normal": [-1], "offset": 1}],
                        "divisors": [{"facet": 0, "beta": 0.5}]})");
    const auto f = run({"--polytope", floats.path(), "validate"});
    CHECK(f.code == 2);
    CHECK(f.err.find("divisors[0].beta") != std::string::npos);
    TempFile broken("{\"dim\": 1, ");
    CHECK(run({"--polytope", broken.path(), "validate"}).code == 2);
    TempFile unbounded(R"({"dim": 2, "halfspaces": [{"normal": [1, 0], "offset": 0}]})");
    CHECK(run({"--polytope", unbounded.path(), "validate"}).code == 2);
    CHECK(run({"--fixture", "cp1-unit", "--divisors", "5:1/2", "q", "--i", "1"}).code == 2);
    CHECK(run({"--fixture", "cp1-unit", "--divisors", "0:3/2", "q", "--i", "1"}).code == 2);
    CHECK(run({"--fixture", "cp1-unit", "q"}).code == 2);
    CHECK(run({"--fixture", "cp1-unit", "decide", "--i", "2", "--mode", "vertex"}).code == 2);
    CHECK(run({"--polytope", "/nonexistent/file.json", "validate"}).code == 2);
    const auto cap = run({"--fixture", "square-sym", "decide", "--i", "2", "--mode", "exact", "--max-constraints", "3",
                          "--samples", "8"});
    CHECK(cap.code == 3);
    CHECK(cap.out.find("not a certificate") != std::string::npos);
  }
}
