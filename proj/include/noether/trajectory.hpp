#pragma once

#include <span>
#include <string>
#include <vector>

#include "noether/expr.hpp"
#include "noether/variational.hpp"

namespace noether {

/// Where pointwise ("almost everywhere") checks sample, and how integrals
/// along a trajectory are computed.
struct SamplePlan {
  int samples_per_segment = 17;   // Chebyshev positions inside each segment
  double margin_fraction = 1e-6;  // breakpoint exclusion, relative to segment length
  int quadrature_nodes = 32;      // Gauss-Legendre nodes per segment

  void validate() const;
};

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int nodes);

struct State {
  std::vector<double> x;
  std::vector<double> v;
};

/// A sampling site strictly inside one segment.
struct SampleSite {
  double t = 0.0;
  std::size_t segment = 0;
};

/// Continuous, piecewise-C1 curve on [a, b]. Segment k is valid on
/// [breakpoints[k], breakpoints[k+1]] and is given by n expressions in t.
class PiecewiseTrajectory {
 public:
  int dimension() const { return dimension_; }
  const Interval& interval() const { return interval_; }
  std::span<const double> breakpoints() const { return breakpoints_; }
  std::size_t segment_count() const { return segments_.size(); }
  std::span<const Expr> segment(std::size_t k) const { return segments_[k]; }
  std::span<const Expr> segment_velocity(std::size_t k) const { return velocities_[k]; }
  double lipschitz_bound() const { return lipschitz_bound_; }

  /// Index of the segment containing t (the left one at an interior breakpoint).
  std::size_t segment_at(double t) const;

  /// State on a given segment, extended by its formula.
  State state_on(std::size_t segment, double t) const;

  /// (t, x(t), v(t)) on the given segment, ready for evaluation.
  Point point_on(std::size_t segment, double t) const;

  friend PiecewiseTrajectory build_trajectory(int dimension, Interval interval, std::vector<double> breakpoints,
                                              std::vector<std::vector<Expr>> segments);

 private:
  int dimension_ = 1;
  Interval interval_;
  std::vector<double> breakpoints_;
  std::vector<std::vector<Expr>> segments_;
  std::vector<std::vector<Expr>> velocities_;
  double lipschitz_bound_ = 0.0;
};

/// Validates ordering, single-variable segments, and continuity at the
/// interior breakpoints (relative 1e-9).
PiecewiseTrajectory build_trajectory(int dimension, Interval interval, std::vector<double> breakpoints,
                                     const std::vector<std::vector<std::string>>& segment_sources);
PiecewiseTrajectory build_trajectory(int dimension, Interval interval, std::vector<double> breakpoints,
                                     std::vector<std::vector<Expr>> segments);

/// Position and a.e. velocity at t. Requesting the state within the margin
/// of an interior breakpoint raises PreconditionError.
State eval_state(const PiecewiseTrajectory& traj, double t, const SamplePlan& plan = {});

/// Interior Chebyshev sampling sites for every segment, in increasing t.
std::vector<SampleSite> interior_samples(const PiecewiseTrajectory& traj, const SamplePlan& plan);

/// Sum over segments of Gauss-Legendre quadrature of integrand(t, x(t), v(t)).
double quadrature_along(const PiecewiseTrajectory& traj, const Expr& integrand, const SamplePlan& plan = {});

/// F(t) = integral of the integrand from a to t. F(a) = 0 and F(b) equals
/// quadrature_along.
class RunningIntegral {
 public:
  RunningIntegral(const PiecewiseTrajectory& traj, Expr integrand, const SamplePlan& plan);

  double operator()(double t) const;

 private:
  double partial(std::size_t segment, double upper) const;

  const PiecewiseTrajectory* traj_;
  Expr integrand_;
  const GaussLegendre* rule_;
  std::vector<double> cumulative_;  // integral up to the start of each segment
};

RunningIntegral running_integral(const PiecewiseTrajectory& traj, const Expr& integrand, const SamplePlan& plan = {});

}  // namespace noether
