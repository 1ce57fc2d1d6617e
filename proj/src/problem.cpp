#include "noether/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace noether {

using Json = nlohmann::ordered_json;

namespace {

const Json& require(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ProblemError(where + ": missing key '" + key + "'");
  return *it;
}

// Numbers may be written as JSON numbers or as constant expressions ("1/3").
double real_value(const Json& value, int dimension, const std::string& where) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    Expr e = simplify(parse(value.get<std::string>(), dimension));
    if (e.is_constant()) return e.value();
    throw ProblemError(where + ": '" + value.get<std::string>() + "' is not a constant");
  }
  throw ProblemError(where + ": expected a number");
}

std::string string_value(const Json& value, const std::string& where) {
  if (!value.is_string()) throw ProblemError(where + ": expected a string");
  return value.get<std::string>();
}

std::vector<std::string> string_list(const Json& value, const std::string& where) {
  if (!value.is_array()) throw ProblemError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& item : value) out.push_back(string_value(item, where));
  return out;
}

template <typename T>
void read_optional(const Json& obj, const char* key, std::optional<T>& slot) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    slot = it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ProblemError(std::string("config: bad value for '") + key + "'");
  }
}

template <typename T>
void overlay(std::optional<T>& into, const std::optional<T>& from) {
  if (from) into = from;
}

std::string status_of(const ConditionVerdict& v) { return std::string(status_name(v.status)); }

}  // namespace

ProblemFile parse_problem(const Json& doc, std::string fallback_name) {
  if (!doc.is_object()) throw ProblemError("problem file must be a JSON object");
  ProblemFile pf;
  pf.name = doc.contains("name") ? string_value(doc["name"], "name") : std::move(fallback_name);

  const Json& n = require(doc, "n", "problem");
  if (!n.is_number_integer() || n.get<int>() < 1) throw ProblemError("n must be a positive integer");
  pf.dimension = n.get<int>();

  const Json& interval = require(doc, "interval", "problem");
  if (!interval.is_array() || interval.size() != 2) throw ProblemError("interval must be [a, b]");
  pf.interval.a = real_value(interval[0], pf.dimension, "interval");
  pf.interval.b = real_value(interval[1], pf.dimension, "interval");
  if (!(pf.interval.a < pf.interval.b)) throw ProblemError("interval must satisfy a < b");

  pf.lagrangian = string_value(require(doc, "lagrangian", "problem"), "lagrangian");

  const Json& family = require(doc, "family", "problem");
  if (!family.is_object()) throw ProblemError("family must be an object");
  pf.family.time = family.contains("T") ? string_value(family["T"], "family.T") : "t";
  pf.family.space = string_list(require(family, "X", "family"), "family.X");
  if (pf.family.space.size() != static_cast<std::size_t>(pf.dimension)) {
    throw ProblemError("family.X must have n entries");
  }
  if (family.contains("gauge")) pf.family.gauge = string_value(family["gauge"], "family.gauge");

  if (doc.contains("trajectories")) {
    const Json& trajs = doc["trajectories"];
    if (!trajs.is_object()) throw ProblemError("trajectories must be an object keyed by name");
    for (const auto& [name, spec] : trajs.items()) {
      std::string where = "trajectory '" + name + "'";
      TrajectorySpec ts;
      ts.name = name;
      const Json& bps = require(spec, "breakpoints", where);
      if (!bps.is_array()) throw ProblemError(where + ": breakpoints must be an array");
      for (const auto& b : bps) ts.breakpoints.push_back(real_value(b, pf.dimension, where));
      const Json& segs = require(spec, "segments", where);
      if (!segs.is_array()) throw ProblemError(where + ": segments must be an array");
      for (const auto& seg : segs) {
        // A bare string is accepted for one-dimensional problems.
        ts.segments.push_back(seg.is_string() ? std::vector<std::string>{seg.get<std::string>()}
                                              : string_list(seg, where));
      }
      pf.trajectories.push_back(std::move(ts));
    }
  }

  if (doc.contains("config")) {
    const Json& cfg = doc["config"];
    if (!cfg.is_object()) throw ProblemError("config must be an object");
    read_optional(cfg, "tol", pf.config.tol);
    read_optional(cfg, "seed", pf.config.seed);
    read_optional(cfg, "samples", pf.config.samples);
    read_optional(cfg, "probe_bound", pf.config.probe_bound);
    read_optional(cfg, "probe_grid", pf.config.probe_grid);
    read_optional(cfg, "probe_random", pf.config.probe_random);
    read_optional(cfg, "quadrature_nodes", pf.config.quadrature_nodes);
    read_optional(cfg, "trials", pf.config.trials);
    read_optional(cfg, "zero_tol", pf.config.zero_tol);
    read_optional(cfg, "epsilon", pf.config.epsilon);
    read_optional(cfg, "state_bound", pf.config.state_bound);
  }

  if (doc.contains("expect")) pf.expect = doc["expect"];
  return pf;
}

ProblemFile parse_problem_text(const std::string& text, std::string fallback_name) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProblemError(std::string("malformed JSON: ") + e.what());
  }
  return parse_problem(doc, std::move(fallback_name));
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str(), path.stem().string());
}

AnalysisConfig make_config(const ConfigOverrides& file, const ConfigOverrides& flags) {
  ConfigOverrides merged = file;
  overlay(merged.tol, flags.tol);
  overlay(merged.seed, flags.seed);
  overlay(merged.samples, flags.samples);
  overlay(merged.probe_bound, flags.probe_bound);
  overlay(merged.probe_grid, flags.probe_grid);
  overlay(merged.probe_random, flags.probe_random);
  overlay(merged.quadrature_nodes, flags.quadrature_nodes);
  overlay(merged.trials, flags.trials);
  overlay(merged.zero_tol, flags.zero_tol);
  overlay(merged.epsilon, flags.epsilon);
  overlay(merged.state_bound, flags.state_bound);

  AnalysisConfig cfg;
  if (merged.tol) cfg.tol = *merged.tol;
  if (merged.seed) {
    cfg.zero.seed = *merged.seed;
    cfg.probes.seed = *merged.seed;
  }
  if (merged.samples) cfg.plan.samples_per_segment = *merged.samples;
  if (merged.probe_bound) cfg.probes.bound = *merged.probe_bound;
  if (merged.probe_grid) cfg.probes.grid = *merged.probe_grid;
  if (merged.probe_random) cfg.probes.random = *merged.probe_random;
  if (merged.quadrature_nodes) cfg.plan.quadrature_nodes = *merged.quadrature_nodes;
  if (merged.trials) cfg.zero.trials = *merged.trials;
  if (merged.zero_tol) cfg.zero.tol = *merged.zero_tol;
  if (merged.epsilon) cfg.epsilon = *merged.epsilon;
  if (merged.state_bound) cfg.state_bound = *merged.state_bound;
  cfg.plan.validate();
  return cfg;
}

const PiecewiseTrajectory* Problem::find_trajectory(const std::string& name) const {
  for (const auto& [n, traj] : trajectories) {
    if (n == name) return &traj;
  }
  return nullptr;
}

Problem build_problem(ProblemFile file, const ZeroTestConfig& zero) {
  LagrangianSystem system = build_system(file.dimension, file.interval, file.lagrangian);
  TransformationFamily family = build_family(system, file.family.time, file.family.space, file.family.gauge, zero);
  std::vector<std::pair<std::string, PiecewiseTrajectory>> trajs;
  for (const TrajectorySpec& ts : file.trajectories) {
    for (const auto& [existing, _] : trajs) {
      if (existing == ts.name) throw ProblemError("duplicate trajectory name '" + ts.name + "'");
    }
    trajs.emplace_back(ts.name, build_trajectory(file.dimension, file.interval, ts.breakpoints, ts.segments));
  }
  return Problem{std::move(file), std::move(system), std::move(family), std::move(trajs)};
}

std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ProblemError("corpus directory not found: " + dir.string());
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::filesystem::path default_corpus_dir() {
#ifdef NOETHER_DEMO_DIR
  return NOETHER_DEMO_DIR;
#else
  return "demos";
#endif
}

std::vector<std::string> check_expectations(const Json& expected, const AnalysisReport& report, int dimension) {
  std::vector<std::string> diffs;
  auto expect_string = [&](const char* key, const std::string& actual) {
    if (!expected.contains(key)) return;
    std::string want = expected[key].get<std::string>();
    if (want != actual) diffs.push_back(std::string(key) + ": expected " + want + ", got " + actual);
  };
  auto expect_bool = [&](const char* key, bool actual) {
    if (!expected.contains(key)) return;
    bool want = expected[key].get<bool>();
    if (want != actual) {
      diffs.push_back(std::string(key) + ": expected " + (want ? "true" : "false") + ", got " +
                      (actual ? "true" : "false"));
    }
  };
  auto expect_close = [&](const char* key, const char* tol_key, double actual) {
    if (!expected.contains(key)) return;
    double want = expected[key].get<double>();
    double tol = expected.value(tol_key, 1e-9);
    if (!(std::abs(actual - want) <= tol)) {
      diffs.push_back(std::string(key) + ": expected " + std::to_string(want) + " +/- " + std::to_string(tol) +
                      ", got " + std::to_string(actual));
    }
  };

  expect_string("invariance", report.invariance.invariant ? "invariant" : "not_invariant");
  expect_string("euler_lagrange", status_of(report.euler_lagrange));
  expect_string("dubois_reymond", status_of(report.dubois_reymond));
  expect_string("weierstrass", status_of(report.weierstrass));
  expect_bool("pontryagin", report.pontryagin_class);
  expect_bool("theorem4", report.theorem4_class);
  expect_string("conservation", report.conservation.conserved ? "conserved" : "not_conserved");
  expect_close("deviation", "deviation_tol", report.conservation.deviation);
  expect_close("dubois_reymond_residual", "residual_tol", report.dubois_reymond.residual);
  expect_close("euler_lagrange_residual", "residual_tol", report.euler_lagrange.residual);
  if (expected.contains("weierstrass_excess")) {
    double actual = report.weierstrass.witness ? report.weierstrass.witness->excess : 0.0;
    expect_close("weierstrass_excess", "residual_tol", actual);
  }
  if (expected.contains("noether")) {
    Expr want = parse(expected["noether"].get<std::string>(), dimension);
    SamplingBox box;
    box.dimension = dimension;
    ZeroVerdict same = is_identically_zero(report.noether - want, box);
    if (!same.syntactic) {
      diffs.push_back("noether: expected " + to_string(want) + ", got " + to_string(report.noether));
    }
  }
  if (report.finding) diffs.push_back("finding: " + *report.finding);
  return diffs;
}

}  // namespace noether
