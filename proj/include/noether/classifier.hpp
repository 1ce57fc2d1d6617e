#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noether/expr.hpp"
#include "noether/symmetry.hpp"
#include "noether/trajectory.hpp"
#include "noether/variational.hpp"

namespace noether {

enum class Status { Pass, Fail };

std::string_view status_name(Status s);

struct Witness {
  double t = 0.0;
  std::string detail;
  std::vector<double> probe;  // Weierstrass only
  double excess = 0.0;        // Weierstrass only
};

struct ConditionVerdict {
  Status status = Status::Pass;
  double residual = 0.0;
  std::optional<Witness> witness;

  bool passed() const { return status == Status::Pass; }
};

/// Integrated Euler-Lagrange form: L_v(t) - int_a^t L_x is constant a.e.
/// The constant is the componentwise median of the samples; passes iff the
/// max deviation is <= tol (1 + |c|_inf).
ConditionVerdict check_euler_lagrange(const LagrangianSystem& system, const PiecewiseTrajectory& traj,
                                      const SamplePlan& plan, double tol);

/// Integrated DuBois-Reymond form: (L - L_v.v)(t) - int_a^t L_t is constant a.e.
ConditionVerdict check_dubois_reymond(const LagrangianSystem& system, const PiecewiseTrajectory& traj,
                                      const SamplePlan& plan, double tol);

struct ProbeConfig {
  std::optional<double> bound;  // default max(2 * lipschitz_bound, 2)
  int grid = 41;                // points per axis on [-W, W]
  int random = 64;
  std::uint64_t seed = 20030101;
};

/// Semi-decision of the Weierstrass condition: the excess must be >= -tol
/// for every grid and random probe at every interior sample.
ConditionVerdict check_weierstrass(const LagrangianSystem& system, const PiecewiseTrajectory& traj,
                                   const SamplePlan& plan, double tol, const ProbeConfig& probes = {});

struct ConservationResult {
  double deviation = 0.0;  // max - min over the interior samples
  double mean = 0.0;
  double scale = 0.0;      // max |value|
  std::vector<double> values;
  bool conserved = true;
};

ConservationResult verify_conservation(const Expr& quantity, const PiecewiseTrajectory& traj,
                                       const SamplePlan& plan, double tol = 1e-6);

struct AnalysisConfig {
  double tol = 1e-6;
  SamplePlan plan;
  ProbeConfig probes;
  ZeroTestConfig zero;
  double epsilon = 0.5;       // s ranges over [-epsilon, epsilon] in the zero test
  double state_bound = 2.0;   // x, v, a range over [-bound, bound] in the zero test
};

struct AnalysisReport {
  InvarianceVerdict invariance;
  Expr noether;
  ConditionVerdict euler_lagrange;
  ConditionVerdict dubois_reymond;
  ConditionVerdict weierstrass;
  bool pontryagin_class = false;  // EL and Weierstrass
  bool theorem4_class = false;    // EL and DuBois-Reymond
  ConservationResult conservation;
  /// Set when an invariant problem has an EL+DBR trajectory whose quantity
  /// is not conserved. This contradicts the conservation theorem and points
  /// at a numerical or modelling error.
  std::optional<std::string> finding;
};

AnalysisReport analyze(const LagrangianSystem& system, const TransformationFamily& family,
                       const PiecewiseTrajectory& traj, const AnalysisConfig& config = {});

}  // namespace noether
