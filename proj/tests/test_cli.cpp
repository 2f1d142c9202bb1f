#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include <nlohmann/json.hpp>

#include "cubeforge/cli.hpp"

using namespace cubeforge;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

// Fresh scratch directory per test case.
struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("cubeforge_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(dir);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("count") {
  const Result r = cli({"count", "--m", "1729"});
  CHECK(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["ordered_count"] == 4);
  CHECK(j["pairs"].size() == 4);
  CHECK(cli({"count", "--m", "0"}).code == kExitInvalidInput);
  CHECK(cli({"count", "--m", "abc"}).code == kExitInvalidInput);
  CHECK(cli({"count"}).code == kExitInvalidInput);
  CHECK(cli({"no-such-command"}).code == kExitInvalidInput);
}

TEST_CASE("phi, search, height") {
  const Result p = cli({"phi", "--m0", "6", "--point", "17,37,21"});
  REQUIRE(p.code == kExitOk);
  const json pj = json::parse(p.out);
  CHECK(pj["image"]["X"] == "28");
  CHECK(pj["image"]["Y"] == "80");
  CHECK(cli({"phi", "--m0", "6", "--point", "1,1,1"}).code == kExitInvalidInput);

  const Result s = cli({"search", "--m0", "7", "--zmax", "2"});
  REQUIRE(s.code == kExitOk);
  CHECK(json::parse(s.out).size() >= 2);

  const Result h = cli({"height", "--m0", "6", "--point", "28,80", "--tol", "0.01"});
  REQUIRE(h.code == kExitOk);
  const json hj = json::parse(h.out);
  CHECK(hj["canonical_height"]["radius"].get<double>() <= 0.01);
  CHECK(hj["lemma3_window"] == true);
  CHECK(cli({"height", "--m0", "6", "--point", "infinity"}).code == kExitOk);
}

TEST_CASE("precision budget maps to exit 3") {
  const Result r = cli({"--digit-budget", "200", "height", "--m0", "6", "--point", "28,80", "--tol", "1e-9"});
  CHECK(r.code == kExitPrecisionBudget);
  CHECK(r.err.find("achievable tol") != std::string::npos);

  ::setenv("CUBEFORGE_DIGIT_BUDGET", "200", 1);
  CHECK(digit_budget_from_env() == 200);
  CHECK(cli({"height", "--m0", "6", "--point", "28,80", "--tol", "1e-9"}).code == kExitPrecisionBudget);
  ::setenv("CUBEFORGE_DIGIT_BUDGET", "lots", 1);
  CHECK(cli({"count", "--m", "9"}).code == kExitInvalidInput);
  ::unsetenv("CUBEFORGE_DIGIT_BUDGET");
}

TEST_CASE("independence command") {
  Scratch s;
  const std::string good = s.write("good.json", R"([["17","37","21"]])");
  CHECK(cli({"independence", "--m0", "6", "--points", good}).code == kExitOk);
  const std::string dep = s.write("dep.json", R"([{"X":"28","Y":"80"},{"X":"16009/100","Y":"-2021723/1000"}])");
  const Result r = cli({"independence", "--m0", "6", "--points", dep});
  CHECK(r.code == kExitCheckFailed);
  CHECK(json::parse(r.out)["independent"] == false);
  CHECK(cli({"independence", "--m0", "6", "--points", s.write("e.json", "[]")}).code == kExitInvalidInput);
}

TEST_CASE("construct and verify round trip") {
  Scratch s;
  const std::string gens = s.write("gens.json", R"([["17","37","21"]])");
  const std::string cert = s.path("cert.json");
  const Result c = cli({"construct", "--m0", "6", "--generators", gens, "--N", "2", "--out", cert});
  REQUIRE(c.code == kExitOk);
  const json cj = json::parse(slurp(cert));
  CHECK(cj["m"] == "49244246842992972624000");
  CHECK(cj["checks"]["theorem_preconditions"] == false);

  const Result v = cli({"verify", "--cert", cert});
  CHECK(v.code == kExitOk);
  const json vj = json::parse(v.out);
  CHECK(vj["integrity_ok"] == true);
  CHECK(vj["theorem_applicable"] == false);

  SUBCASE("strict mode rejects N below N_min") {
    const Result strict = cli({"verify", "--cert", cert, "--strict"});
    CHECK(strict.code == kExitCheckFailed);
    CHECK(strict.err.find("theorem_preconditions") != std::string::npos);
  }

  SUBCASE("tampered representation") {
    json t = cj;
    std::string x = t["representations"][0][0];
    x.back() = x.back() == '0' ? '1' : '0';
    t["representations"][0][0] = x;
    const std::string bad = s.write("tampered.json", t.dump(2));
    const Result r = cli({"verify", "--cert", bad});
    CHECK(r.code == kExitCheckFailed);
    CHECK(r.err.find("representation_identities") != std::string::npos);
  }

  SUBCASE("tampered m") {
    json t = cj;
    t["m"] = "49244246842992972624001";
    const Result r = cli({"verify", "--cert", s.write("m.json", t.dump())});
    CHECK(r.code == kExitCheckFailed);
    CHECK(r.err.find("m_product") != std::string::npos);
  }

  SUBCASE("forged check flag") {
    json t = cj;
    t["checks"]["theorem_preconditions"] = true;
    const Result r = cli({"verify", "--cert", s.write("flag.json", t.dump())});
    CHECK(r.code == kExitCheckFailed);
    CHECK(r.err.find("transcript_consistent") != std::string::npos);
  }

  SUBCASE("schema errors") {
    json t = cj;
    t.erase("representations");
    CHECK(cli({"verify", "--cert", s.write("schema.json", t.dump())}).code == kExitInvalidInput);
    CHECK(cli({"verify", "--cert", s.write("garbage.json", "{not json")}).code == kExitInvalidInput);
    CHECK(cli({"verify", "--cert", s.path("missing.json")}).code == kExitInvalidInput);
  }
}

TEST_CASE("construct at N_min passes strict verification") {
  Scratch s;
  const std::string gens = s.write("gens.json", R"([["17","37","21"]])");
  const std::string cert = s.path("cert.json");
  REQUIRE(cli({"construct", "--m0", "6", "--generators", gens, "--N", "4", "--out", cert}).code == kExitOk);
  const Result v = cli({"verify", "--cert", cert, "--strict"});
  CHECK(v.code == kExitOk);
  CHECK(json::parse(v.out)["theorem_ok"] == true);
}

TEST_CASE("construct input errors") {
  Scratch s;
  CHECK(cli({"construct", "--m0", "6", "--generators", s.write("e.json", "[]"), "--N", "2"}).code ==
        kExitInvalidInput);
  CHECK(cli({"construct", "--m0", "6", "--generators", s.write("off.json", R"([["1","1","1"]])"), "--N", "2"})
            .code == kExitInvalidInput);
  CHECK(cli({"construct", "--m0", "6", "--generators", s.write("g.json", R"([["17","37","21"]])"), "--N", "0"})
            .code == kExitInvalidInput);
}

TEST_CASE("certificates are byte-identical with a pinned timestamp") {
  Scratch s;
  const std::string gens = s.write("gens.json", R"([["17","37","21"]])");
  ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  const Result a = cli({"construct", "--m0", "6", "--generators", gens, "--N", "3"});
  const Result b = cli({"construct", "--m0", "6", "--generators", gens, "--N", "3"});
  ::unsetenv("SOURCE_DATE_EPOCH");
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["metadata"]["timestamp"] == "2023-11-14T22:13:20Z");
}

TEST_CASE("certify-corollary") {
  const Result r = cli({"certify-corollary", "--hB", "121.767", "--hxmax", "76.61", "--r", "11"});
  CHECK(r.code == kExitOk);
  const Result hi = cli({"certify-corollary", "--hB", "121.767", "--hxmax", "76.61", "--r", "11", "--claimed", "5e-6"});
  CHECK(hi.code == kExitCheckFailed);
  CHECK(cli({"certify-corollary", "--hxmax", "76.61", "--r", "11"}).code == kExitInvalidInput);
  CHECK(cli({"certify-corollary", "--hB", "x", "--hxmax", "76.61", "--r", "11"}).code == kExitInvalidInput);
}
