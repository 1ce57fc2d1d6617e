#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "noether/cli.hpp"
#include "noether/problem.hpp"
#include "noether/report.hpp"

using namespace noether;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string demo(const char* name) { return (default_corpus_dir() / name).string(); }

fs::path scratch_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("noether_kit_" + tag + "_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"classify", "--help"}).code == kExitOk);
  CHECK(run({}).code == kExitError);
  CHECK(run({"frobnicate"}).code == kExitError);
  CHECK(run({"invariance"}).code == kExitError);
  CHECK(run({"invariance", demo("dilation.json"), "--tol", "abc"}).code == kExitError);
  CHECK(run({"invariance", "/nonexistent/problem.json"}).code == kExitError);
}

TEST_CASE("invariance exit codes") {
  Run ok = run({"invariance", demo("counterexample.json")});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("invariant") != std::string::npos);
  Run bad = run({"invariance", demo("dilation.json")});
  CHECK(bad.code == kExitNotInvariant);
  CHECK(bad.out.find("witness") != std::string::npos);
  CHECK(bad.out.find("-v1^2") != std::string::npos);
}

TEST_CASE("invariance json output") {
  fs::path dir = scratch_dir("inv");
  fs::path out = dir / "inv.json";
  CHECK(run({"invariance", demo("dilation.json"), "--json", out.string()}).code == kExitNotInvariant);
  auto doc = nlohmann::json::parse(slurp(out));
  CHECK(doc["invariance"]["status"] == "not_invariant");
  CHECK(doc["invariance"]["witness"]["t"].is_number());
  fs::remove_all(dir);
}

TEST_CASE("noether subcommand") {
  Run r = run({"noether", demo("counterexample.json"), "--classical"});
  CHECK(r.code == kExitOk);
  Expr printed = parse(r.out.substr(0, r.out.find('\n')), 1);
  CHECK(is_identically_zero(printed + parse("(v1^2 - 1)*(1 + 3*v1^2)", 1), SamplingBox::standard(1, 0, 1)).zero);
  CHECK(r.out.find("structurally equal: yes") != std::string::npos);

  Run boost = run({"noether", demo("free_particle_boost.json")});
  CHECK(boost.code == kExitOk);
  CHECK(boost.out == "t*v1 - x1\n");
  CHECK(run({"noether", demo("free_particle_boost.json"), "--classical"}).code == kExitError);
}

TEST_CASE("classify prints a table and a valid report") {
  Run r = run({"classify", demo("counterexample.json"), "plateau"});
  CHECK(r.code == kExitOk);
  std::size_t brace = r.out.find('{');
  REQUIRE(brace != std::string::npos);
  CHECK(r.out.find("dubois-reymond") < brace);
  auto doc = nlohmann::json::parse(r.out.substr(brace));
  CHECK(validate_report_json(doc).empty());
  CHECK(doc["conditions"]["dubois_reymond"]["status"] == "fail");
  CHECK(doc["conservation"]["deviation"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));

  CHECK(run({"classify", demo("counterexample.json"), "nope"}).code == kExitError);
}

TEST_CASE("classify json file round-trips through the schema") {
  fs::path dir = scratch_dir("classify");
  for (const char* traj : {"zigzag", "plateau", "rest"}) {
    fs::path out = dir / (std::string(traj) + ".json");
    Run r = run({"classify", demo("counterexample.json"), traj, "--json", out.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find('{') == std::string::npos);
    auto doc = nlohmann::json::parse(slurp(out));
    CHECK(validate_report_json(doc).empty());
    CHECK(nlohmann::json::parse(doc.dump()) == doc);
  }
  fs::remove_all(dir);
}

TEST_CASE("schema validation catches broken reports") {
  Run r = run({"classify", demo("counterexample.json"), "plateau"});
  auto doc = nlohmann::json::parse(r.out.substr(r.out.find('{')));
  auto broken = doc;
  broken["conditions"]["weierstrass"].erase("witness");
  CHECK_FALSE(validate_report_json(broken).empty());
  broken = doc;
  broken["conservation"]["status"] = "maybe";
  CHECK_FALSE(validate_report_json(broken).empty());
  broken = doc;
  broken.erase("noether");
  CHECK_FALSE(validate_report_json(broken).empty());
}

TEST_CASE("output is reproducible") {
  Run a = run({"classify", demo("counterexample.json"), "plateau"});
  Run b = run({"classify", demo("counterexample.json"), "plateau"});
  CHECK(a.out == b.out);
  Run c = run({"invariance", demo("dilation.json"), "--seed", "7"});
  Run d = run({"invariance", demo("dilation.json"), "--seed", "7"});
  Run e = run({"invariance", demo("dilation.json"), "--seed", "8"});
  CHECK(c.out == d.out);
  CHECK(c.out != e.out);
  CHECK(run({"demo"}).out == run({"demo"}).out);
}

TEST_CASE("flags override file config") {
  CHECK(run({"classify", demo("counterexample.json"), "zigzag", "--samples", "2"}).code == kExitError);
  Run tight = run({"classify", demo("counterexample.json"), "plateau", "--probe-bound", "0.5"});
  CHECK(tight.code == kExitOk);
  auto doc = nlohmann::json::parse(tight.out.substr(tight.out.find('{')));
  // On [-0.5, 0.5] the excess at v=0 is (w^2 - 1)^2 - 1 >= -7/16.
  CHECK(doc["conditions"]["weierstrass"]["residual"].get<double>() == doctest::Approx(7.0 / 16.0));
}

TEST_CASE("demo runs the corpus") {
  Run r = run({"demo"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("0 mismatches") != std::string::npos);
  Run one = run({"demo", "--filter", "dilation"});
  CHECK(one.code == kExitOk);
  CHECK(one.out.find("1 cases") != std::string::npos);
  CHECK(one.out.find("counterexample") == std::string::npos);
}

TEST_CASE("demo reports corrupted expectations") {
  fs::path dir = scratch_dir("corpus");
  fs::copy_file(demo("counterexample.json"), dir / "counterexample.json");
  auto doc = nlohmann::ordered_json::parse(slurp(dir / "counterexample.json"));
  doc["expect"]["trajectories"]["plateau"]["dubois_reymond"] = "pass";
  std::ofstream(dir / "counterexample.json") << doc.dump(2);
  Run r = run({"demo", "--corpus", dir.string()});
  CHECK(r.code == kExitExpectationMismatch);
  CHECK(r.err.find("plateau") != std::string::npos);

  std::ofstream(dir / "zz_broken.json") << "{ not json";
  CHECK(run({"demo", "--corpus", dir.string()}).code == kExitError);
  fs::remove_all(dir);
}

TEST_CASE("problem files") {
  ProblemFile pf = parse_problem_text(R"({
    "n": 1, "interval": [0, "1/2"], "lagrangian": "v1^2",
    "family": {"X": ["x1 + s"]},
    "trajectories": {"a": {"breakpoints": [0, "1/4", 0.5], "segments": ["t", "1/2 - t"]}},
    "config": {"tol": 1e-8, "samples": 9}
  })",
                                      "fallback");
  CHECK(pf.name == "fallback");
  CHECK(pf.interval.b == 0.5);
  CHECK(pf.family.time == "t");
  CHECK(pf.family.gauge == "0");
  REQUIRE(pf.trajectories.size() == 1);
  CHECK(pf.trajectories[0].breakpoints[1] == 0.25);

  ConfigOverrides flags;
  flags.samples = 5;
  AnalysisConfig cfg = make_config(pf.config, flags);
  CHECK(cfg.tol == 1e-8);
  CHECK(cfg.plan.samples_per_segment == 5);

  Problem problem = build_problem(pf);
  CHECK(problem.find_trajectory("a") != nullptr);
  CHECK(problem.find_trajectory("b") == nullptr);

  CHECK_THROWS_AS(parse_problem_text("[]"), ProblemError);
  CHECK_THROWS_AS(parse_problem_text("{"), ProblemError);
  CHECK_THROWS_AS(parse_problem_text(R"({"n": 1, "interval": [0, 1], "lagrangian": "v1^2"})"), ProblemError);
  CHECK_THROWS_AS(parse_problem_text(R"({"n": 0, "interval": [0, 1], "lagrangian": "v1", "family": {"X": []}})"),
                  ProblemError);
  CHECK_THROWS_AS(
      parse_problem_text(R"({"n": 1, "interval": [1, 0], "lagrangian": "v1", "family": {"X": ["x1"]}})"),
      ProblemError);
  CHECK_THROWS_AS(
      parse_problem_text(R"({"n": 1, "interval": [0, "x1"], "lagrangian": "v1", "family": {"X": ["x1"]}})"),
      ProblemError);
  CHECK_THROWS_AS(parse_problem_text(
                      R"({"n": 1, "interval": [0, 1], "lagrangian": "v1", "family": {"X": ["x1"]}, "config": {"tol": "x"}})"),
                  ProblemError);
}
