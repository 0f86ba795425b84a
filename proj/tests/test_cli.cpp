#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hoffman/cli.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = hoffman::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path write_tmp(const std::string& name,
                                const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "hoffman_cli_tests";
  std::filesystem::create_directories(dir);
  auto p = dir / name;
  std::ofstream f(p);
  f << content;
  return p;
}

std::string box_json() {
  return R"({
    "n": 2, "norm": "l2",
    "rows": [
      {"label": "x1<=1",  "a": [1, 0]},
      {"label": "-x1<=1", "a": [-1, 0]},
      {"label": "x2<=1",  "a": [0, 1]},
      {"label": "-x2<=1", "a": [0, -1]}
    ],
    "b": [1, 1, 1, 1]
  })";
}

}  // namespace

TEST_CASE("global on the box") {
  auto sys = write_tmp("box.json", box_json());
  RunResult r = run_cli({"global", sys.string(), "--exhaustive"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(std::sqrt(2.0)));
  CHECK(j["subset"]["indices"].size() == 2);
  CHECK(j["routes_agree"].get<bool>());
  CHECK(j["certificate"].is_array());
  CHECK(j["tool"] == "hoffman");
}

TEST_CASE("missing file exits with code 2") {
  RunResult r = run_cli({"global", "/nonexistent/missing.json"});
  CHECK(r.code == 2);
  CHECK(!r.err.empty());
}

TEST_CASE("malformed JSON exits with code 2") {
  auto sys = write_tmp("bad.json", "{ not json");
  RunResult r = run_cli({"global", sys.string()});
  CHECK(r.code == 2);
}

TEST_CASE("infeasible system exits with code 3") {
  auto sys = write_tmp("infeasible.json", R"({
    "n": 1, "norm": "l2",
    "rows": [{"label": "a", "a": [1]}, {"label": "b", "a": [-1]}],
    "b": [-1, -1]
  })");
  RunResult r = run_cli({"at", sys.string()});
  CHECK(r.code == 3);
}

TEST_CASE("calmness of the discretized builtin at (1,-2) is sqrt(5)") {
  auto sys = write_tmp("exa43.json", R"({"builtin": "example-4-3"})");
  RunResult r = run_cli({"calmness", sys.string(), "--grid-step", "0.1",
                         "--point", "1,-2"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["value"].get<double>() ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
  CHECK(j["d_family"].size() == 4);
}

TEST_CASE("vertices subcommand lists the box corners") {
  auto sys = write_tmp("box.json", box_json());
  RunResult r = run_cli({"vertices", sys.string()});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["vertices"].size() == 4);
}

TEST_CASE("verify runs the sampling estimators and the chain check") {
  auto sys = write_tmp("box.json", box_json());
  RunResult r = run_cli({"verify", sys.string(), "--samples", "2000", "--seed",
                         "1", "--radius", "3"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["hof_at"].get<double>() == doctest::Approx(std::sqrt(2.0)));
  CHECK(j["chain"]["passed"].get<bool>());
  CHECK(j["mc_ratio_sup"].get<double>() <= std::sqrt(2.0) + 1e-9);
}

TEST_CASE("reports are byte-identical across runs") {
  auto sys = write_tmp("box.json", box_json());
  std::vector<std::string> args = {"verify", sys.string(), "--samples", "500",
                                   "--seed", "7"};
  RunResult r1 = run_cli(args);
  RunResult r2 = run_cli(args);
  REQUIRE(r1.code == 0);
  CHECK(r1.out == r2.out);

  RunResult g1 = run_cli({"global", sys.string()});
  RunResult g2 = run_cli({"global", sys.string()});
  CHECK(g1.out == g2.out);
}

TEST_CASE("dump-normalized round-trips to an equivalent system") {
  auto sys = write_tmp("box.json", box_json());
  RunResult r1 = run_cli({"global", sys.string(), "--dump-normalized"});
  REQUIRE(r1.code == 0);
  auto sys2 = write_tmp("box_normalized.json", r1.out);
  RunResult r2 = run_cli({"global", sys2.string(), "--dump-normalized"});
  REQUIRE(r2.code == 0);
  CHECK(r1.out == r2.out);

  RunResult v1 = run_cli({"global", sys.string()});
  RunResult v2 = run_cli({"global", sys2.string()});
  json j1 = json::parse(v1.out);
  json j2 = json::parse(v2.out);
  CHECK(j1["value"] == j2["value"]);
}

TEST_CASE("lab subcommand reports fixture estimates") {
  RunResult r = run_cli({"lab", "--fixture", "truncated-halfline", "--ybar",
                         "-0.5", "--levels", "10", "--per-level", "24"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["hof"]["value"].get<double>() == doctest::Approx(1.0).epsilon(0.05));
  CHECK(j["hof"]["diverged"].get<bool>() == false);
}

TEST_CASE("grid-study tabulates refinements of the builtin") {
  RunResult r = run_cli({"grid-study", "--builtin", "example-4-3", "--steps",
                         "0.2,0.1", "--point", "1,-2"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["steps"].size() == 2);
  CHECK(j["steps"][0]["hof_global"].get<double>() >= 5.0);
  CHECK(j["steps"][1]["hof_global"].get<double>() >=
        j["steps"][0]["hof_global"].get<double>() - 1e-9);
  CHECK(j["steps"][1]["clm_at_point"].get<double>() ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
}

TEST_CASE("rhs file overrides the inline right-hand side") {
  auto sys = write_tmp("box.json", box_json());
  auto rhs = write_tmp("b2.json", "[2, 2, 2, 2]");
  RunResult r = run_cli({"vertices", sys.string(), "--rhs", rhs.string()});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["vertices"].size() == 4);
  CHECK(std::abs(j["vertices"][0][0].get<double>()) == doctest::Approx(2.0));
}

TEST_CASE("unknown fixture exits 2, bad point exits 2") {
  RunResult r1 = run_cli({"lab", "--fixture", "nope", "--ybar", "0"});
  CHECK(r1.code == 2);
  auto sys = write_tmp("box.json", box_json());
  RunResult r2 = run_cli({"calmness", sys.string(), "--point", "a,b"});
  CHECK(r2.code == 2);
}
