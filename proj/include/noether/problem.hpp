#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "noether/classifier.hpp"
#include "noether/symmetry.hpp"
#include "noether/trajectory.hpp"
#include "noether/variational.hpp"

namespace noether {

struct FamilySpec {
  std::string time = "t";
  std::vector<std::string> space;
  std::string gauge = "0";
};

struct TrajectorySpec {
  std::string name;
  std::vector<double> breakpoints;
  std::vector<std::vector<std::string>> segments;
};

/// Optional tuning knobs. Values from later layers override earlier ones:
/// defaults < problem file < command-line flags.
struct ConfigOverrides {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<double> probe_bound;
  std::optional<int> probe_grid;
  std::optional<int> probe_random;
  std::optional<int> quadrature_nodes;
  std::optional<int> trials;
  std::optional<double> zero_tol;
  std::optional<double> epsilon;
  std::optional<double> state_bound;
};

struct ProblemFile {
  std::string name;
  int dimension = 1;
  Interval interval;
  std::string lagrangian;
  FamilySpec family;
  std::vector<TrajectorySpec> trajectories;
  ConfigOverrides config;
  nlohmann::ordered_json expect;  // demo expectations; empty if absent
};

/// Schema errors in a problem file.
class ProblemError : public Error {
 public:
  using Error::Error;
};

ProblemFile parse_problem(const nlohmann::ordered_json& doc, std::string fallback_name = "problem");
ProblemFile parse_problem_text(const std::string& text, std::string fallback_name = "problem");
ProblemFile load_problem(const std::filesystem::path& path);

AnalysisConfig make_config(const ConfigOverrides& file, const ConfigOverrides& flags = {});

/// A problem file with every expression parsed and validated.
struct Problem {
  ProblemFile file;
  LagrangianSystem system;
  TransformationFamily family;
  std::vector<std::pair<std::string, PiecewiseTrajectory>> trajectories;

  const PiecewiseTrajectory* find_trajectory(const std::string& name) const;
};

Problem build_problem(ProblemFile file, const ZeroTestConfig& zero = {});

/// Problem files in a corpus directory, sorted by file name.
std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir);

std::filesystem::path default_corpus_dir();

/// Compares a report with one trajectory's expectation block; returns one
/// line per mismatch. A "noether" entry must match syntactically after
/// simplification.
std::vector<std::string> check_expectations(const nlohmann::ordered_json& expected, const AnalysisReport& report,
                                            int dimension);

}  // namespace noether
