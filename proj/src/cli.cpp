#include "noether/cli.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "noether/classifier.hpp"
#include "noether/problem.hpp"
#include "noether/report.hpp"

namespace noether {
namespace {

using Json = nlohmann::ordered_json;

struct SharedFlags {
  ConfigOverrides overrides;
  std::string json_path;
};

void add_shared_flags(CLI::App& cmd, SharedFlags& flags) {
  auto& o = flags.overrides;
  cmd.add_option_function<double>("--tol", [&o](double v) { o.tol = v; }, "pass/fail tolerance");
  cmd.add_option_function<std::uint64_t>("--seed", [&o](std::uint64_t v) { o.seed = v; }, "seed for random sampling");
  cmd.add_option_function<int>("--samples", [&o](int v) { o.samples = v; }, "interior samples per segment");
  cmd.add_option_function<double>("--probe-bound", [&o](double v) { o.probe_bound = v; },
                                  "Weierstrass probe box half-width");
  cmd.add_option("--json", flags.json_path, "write the JSON report to this path");
}

void write_json(const Json& doc, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << doc.dump(2) << '\n';
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write " + path);
  file << doc.dump(2) << '\n';
}

std::string describe_point(const Point& p) {
  std::ostringstream s;
  s << std::setprecision(17) << "t=" << p.t;
  for (std::size_t i = 0; i < p.x.size(); ++i) s << " x" << i + 1 << "=" << p.x[i];
  for (std::size_t i = 0; i < p.v.size(); ++i) s << " v" << i + 1 << "=" << p.v[i];
  if (p.a) {
    for (std::size_t i = 0; i < p.a->size(); ++i) s << " a" << i + 1 << "=" << (*p.a)[i];
  }
  return s.str();
}

int cmd_invariance(const std::string& path, const SharedFlags& flags, std::ostream& out) {
  ProblemFile pf = load_problem(path);
  AnalysisConfig cfg = make_config(pf.config, flags.overrides);
  Problem problem = build_problem(std::move(pf), cfg.zero);
  SamplingBox box = problem.system.default_box(cfg.epsilon);
  box.x_bound = box.v_bound = box.a_bound = cfg.state_bound;
  InvarianceVerdict v = check_quasi_invariance(problem.system, problem.family, box, cfg.zero);

  if (v.invariant) {
    out << problem.file.name << ": invariant (max residual " << v.max_residual << ")\n";
  } else {
    out << problem.file.name << ": not invariant\n"
        << "  residual  " << to_string(v.residual) << '\n'
        << "  witness   " << describe_point(*v.witness) << '\n'
        << "  value     " << std::setprecision(17) << v.witness_value << '\n';
  }
  if (!flags.json_path.empty()) {
    Json doc;
    doc["problem"] = problem.file.name;
    doc["invariance"] = invariance_to_json(v);
    doc["residual"] = to_string(v.residual);
    write_json(doc, flags.json_path, out);
  }
  return v.invariant ? kExitOk : kExitNotInvariant;
}

int cmd_noether(const std::string& path, bool classical, const SharedFlags& flags, std::ostream& out,
                std::ostream& err) {
  ProblemFile pf = load_problem(path);
  AnalysisConfig cfg = make_config(pf.config, flags.overrides);
  Problem problem = build_problem(std::move(pf), cfg.zero);
  Expr quantity = noether_quantity(problem.system, problem.family);
  out << to_string(quantity) << '\n';

  Json doc;
  doc["problem"] = problem.file.name;
  doc["noether"] = to_string(quantity);
  if (classical) {
    Expr reduced = classical_noether_quantity(problem.system, problem.family);
    bool equal = reduced == quantity;
    out << "classical: " << to_string(reduced) << '\n'
        << "structurally equal: " << (equal ? "yes" : "no") << '\n';
    doc["classical"] = to_string(reduced);
    doc["structurally_equal"] = equal;
    if (!equal) {
      err << "error: classical and general conserved quantities differ\n";
      return kExitError;
    }
  }
  if (!flags.json_path.empty()) write_json(doc, flags.json_path, out);
  return kExitOk;
}

int cmd_classify(const std::string& path, const std::string& trajectory, const SharedFlags& flags,
                 std::ostream& out) {
  ProblemFile pf = load_problem(path);
  AnalysisConfig cfg = make_config(pf.config, flags.overrides);
  Problem problem = build_problem(std::move(pf), cfg.zero);
  const PiecewiseTrajectory* traj = problem.find_trajectory(trajectory);
  if (!traj) throw ProblemError("unknown trajectory '" + trajectory + "' in " + problem.file.name);

  AnalysisReport report = analyze(problem.system, problem.family, *traj, cfg);
  print_report_table(out, report, problem.file.name, trajectory);
  write_json(report_to_json(report, problem.file.name, trajectory), flags.json_path, out);
  return kExitOk;
}

std::string cell(const std::string& s, int width) {
  std::ostringstream o;
  o << std::left << std::setw(width) << s;
  return o.str();
}

int cmd_demo(const std::string& corpus, const std::string& filter, const SharedFlags& flags, std::ostream& out,
             std::ostream& err) {
  std::vector<std::string> mismatches;
  Json summary = Json::array();
  int cases = 0;

  out << cell("problem", 30) << cell("trajectory", 12) << cell("invariance", 15) << cell("EL", 6)
      << cell("DBR", 6) << cell("W", 6) << cell("EL+DBR", 8) << cell("conservation", 15) << cell("deviation", 14)
      << "result\n";

  for (const auto& file : corpus_files(corpus.empty() ? default_corpus_dir() : std::filesystem::path(corpus))) {
    ProblemFile pf = load_problem(file);
    if (!filter.empty() && pf.name.find(filter) == std::string::npos &&
        file.stem().string().find(filter) == std::string::npos) {
      continue;
    }
    AnalysisConfig cfg = make_config(pf.config, flags.overrides);
    Problem problem = build_problem(std::move(pf), cfg.zero);
    const Json& expect = problem.file.expect;
    const std::string& name = problem.file.name;

    if (expect.contains("classical_reduction") && expect["classical_reduction"].get<bool>()) {
      Expr general = noether_quantity(problem.system, problem.family);
      Expr reduced = classical_noether_quantity(problem.system, problem.family);
      if (!(general == reduced)) {
        mismatches.push_back(name + ": classical quantity " + to_string(reduced) + " differs from " +
                             to_string(general));
      }
    }

    for (const auto& [traj_name, traj] : problem.trajectories) {
      ++cases;
      AnalysisReport report = analyze(problem.system, problem.family, traj, cfg);
      Json expected = Json::object();
      for (const char* key : {"invariance", "noether"}) {
        if (expect.contains(key)) expected[key] = expect[key];
      }
      if (expect.contains("trajectories") && expect["trajectories"].contains(traj_name)) {
        for (const auto& [k, v] : expect["trajectories"][traj_name].items()) expected[k] = v;
      }
      std::vector<std::string> diffs = check_expectations(expected, report, problem.system.dimension());
      for (const auto& d : diffs) mismatches.push_back(name + "/" + traj_name + ": " + d);

      std::ostringstream dev;
      dev << std::setprecision(6) << report.conservation.deviation;
      out << cell(name, 30) << cell(traj_name, 12)
          << cell(report.invariance.invariant ? "invariant" : "not_invariant", 15)
          << cell(std::string(status_name(report.euler_lagrange.status)), 6)
          << cell(std::string(status_name(report.dubois_reymond.status)), 6)
          << cell(std::string(status_name(report.weierstrass.status)), 6)
          << cell(report.theorem4_class ? "yes" : "no", 8)
          << cell(report.conservation.conserved ? "conserved" : "not_conserved", 15) << cell(dev.str(), 14)
          << (diffs.empty() ? "ok" : "MISMATCH") << '\n';
      summary.push_back(report_to_json(report, name, traj_name));
    }
  }

  out << cases << " cases, " << mismatches.size() << " mismatches\n";
  if (!flags.json_path.empty()) write_json(summary, flags.json_path, out);
  if (!mismatches.empty()) {
    for (const auto& m : mismatches) err << "mismatch: " << m << '\n';
    return kExitExpectationMismatch;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-invariance, Noether quantities and extremal classification for variational problems",
               "noether-kit"};
  app.require_subcommand(1);

  SharedFlags flags;
  std::string file;
  std::string trajectory;
  std::string filter;
  std::string corpus;
  bool classical = false;

  CLI::App* invariance = app.add_subcommand("invariance", "decide quasi-invariance of a problem file");
  invariance->add_option("file", file, "problem file")->required();
  add_shared_flags(*invariance, flags);

  CLI::App* noether = app.add_subcommand("noether", "print the conserved quantity");
  noether->add_option("file", file, "problem file")->required();
  noether->add_flag("--classical", classical, "also print the classical form and compare");
  add_shared_flags(*noether, flags);

  CLI::App* classify = app.add_subcommand("classify", "classify one trajectory of a problem file");
  classify->add_option("file", file, "problem file")->required();
  classify->add_option("trajectory", trajectory, "trajectory name")->required();
  add_shared_flags(*classify, flags);

  CLI::App* demo = app.add_subcommand("demo", "run the bundled corpus and check its expectations");
  demo->add_option("--filter", filter, "only problems whose name contains this string");
  demo->add_option("--corpus", corpus, "corpus directory");
  add_shared_flags(*demo, flags);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (invariance->parsed()) return cmd_invariance(file, flags, out);
    if (noether->parsed()) return cmd_noether(file, classical, flags, out, err);
    if (classify->parsed()) return cmd_classify(file, trajectory, flags, out);
    if (demo->parsed()) return cmd_demo(corpus, filter, flags, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace noether
