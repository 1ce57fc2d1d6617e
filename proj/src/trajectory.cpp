#include "noether/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include <boost/math/special_functions/legendre.hpp>

namespace noether {

void SamplePlan::validate() const {
  if (samples_per_segment < 3) throw PreconditionError("sample plan needs at least 3 samples per segment");
  if (!(margin_fraction > 0.0) || margin_fraction >= 0.5) {
    throw PreconditionError("sample plan margin must lie in (0, 0.5)");
  }
  if (quadrature_nodes < 1) throw PreconditionError("sample plan needs at least one quadrature node");
}

const GaussLegendre& gauss_legendre(int nodes) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendre>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[nodes];
  if (!slot) {
    auto rule = std::make_unique<GaussLegendre>();
    // legendre_p_zeros returns the nonnegative roots in increasing order.
    std::vector<double> half = boost::math::legendre_p_zeros<double>(nodes);
    for (auto it = half.rbegin(); it != half.rend(); ++it) {
      if (*it != 0.0) rule->nodes.push_back(-*it);
    }
    for (double x : half) rule->nodes.push_back(x);
    for (double x : rule->nodes) {
      double dp = boost::math::legendre_p_prime<double>(nodes, x);
      rule->weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
    }
    slot = std::move(rule);
  }
  return *slot;
}

std::size_t PiecewiseTrajectory::segment_at(double t) const {
  auto first = breakpoints_.begin() + 1;
  auto it = std::lower_bound(first, breakpoints_.end(), t);
  if (it == breakpoints_.end()) return segments_.size() - 1;
  return static_cast<std::size_t>(it - first);
}

State PiecewiseTrajectory::state_on(std::size_t segment, double t) const {
  Point at;
  at.t = t;
  State s;
  for (const Expr& e : segments_[segment]) s.x.push_back(evaluate(e, at));
  for (const Expr& e : velocities_[segment]) s.v.push_back(evaluate(e, at));
  return s;
}

Point PiecewiseTrajectory::point_on(std::size_t segment, double t) const {
  State s = state_on(segment, t);
  Point p;
  p.t = t;
  p.x = std::move(s.x);
  p.v = std::move(s.v);
  return p;
}

namespace {

std::vector<double> chebyshev_positions(double lo, double hi, const SamplePlan& plan) {
  const int m = plan.samples_per_segment;
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double margin = plan.margin_fraction * (hi - lo);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    double u = std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * m));
    out.push_back(std::clamp(mid - half * u, lo + margin, hi - margin));
  }
  return out;
}

void check_integrand(const Expr& integrand) {
  if (contains_kind(integrand, VarKind::Param) || contains_kind(integrand, VarKind::Accel)) {
    throw PreconditionError("integrand along a trajectory may depend only on t, x and v: " + to_string(integrand));
  }
}

double integrate_segment(const PiecewiseTrajectory& traj, const Expr& integrand, const GaussLegendre& rule,
                         std::size_t segment, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double t = mid + half * rule.nodes[i];
    Point p = traj.point_on(segment, t);
    try {
      sum += rule.weights[i] * evaluate(integrand, p);
    } catch (const EvaluationError& e) {
      throw DomainError(std::string(e.what()) + " at quadrature node t=" + std::to_string(t));
    }
  }
  return half * sum;
}

}  // namespace

PiecewiseTrajectory build_trajectory(int dimension, Interval interval, std::vector<double> breakpoints,
                                     const std::vector<std::vector<std::string>>& segment_sources) {
  std::vector<std::vector<Expr>> segments;
  for (const auto& seg : segment_sources) {
    std::vector<Expr> coords;
    for (const auto& src : seg) coords.push_back(parse(src, dimension));
    segments.push_back(std::move(coords));
  }
  return build_trajectory(dimension, interval, std::move(breakpoints), std::move(segments));
}

PiecewiseTrajectory build_trajectory(int dimension, Interval interval, std::vector<double> breakpoints,
                                     std::vector<std::vector<Expr>> segments) {
  if (dimension < 1) throw PreconditionError("dimension must be at least 1");
  if (breakpoints.size() < 2) throw PreconditionError("a trajectory needs at least two breakpoints");
  if (breakpoints.front() != interval.a || breakpoints.back() != interval.b) {
    throw PreconditionError("breakpoints must start at a and end at b");
  }
  for (std::size_t k = 1; k < breakpoints.size(); ++k) {
    if (!(breakpoints[k - 1] < breakpoints[k])) throw PreconditionError("breakpoints must be strictly increasing");
  }
  if (segments.size() + 1 != breakpoints.size()) {
    throw PreconditionError("expected " + std::to_string(breakpoints.size() - 1) + " segments, got " +
                            std::to_string(segments.size()));
  }

  PiecewiseTrajectory traj;
  traj.dimension_ = dimension;
  traj.interval_ = interval;
  traj.breakpoints_ = std::move(breakpoints);
  for (auto& seg : segments) {
    if (seg.size() != static_cast<std::size_t>(dimension)) {
      throw PreconditionError("each segment needs " + std::to_string(dimension) + " coordinate expressions");
    }
    std::vector<Expr> coords;
    std::vector<Expr> vels;
    for (const Expr& e : seg) {
      if (contains_kind(e, VarKind::Param) || contains_kind(e, VarKind::Coord) || contains_kind(e, VarKind::Vel) ||
          contains_kind(e, VarKind::Accel)) {
        throw PreconditionError("segment expressions may depend only on t: " + to_string(e));
      }
      coords.push_back(simplify(e));
      vels.push_back(differentiate(coords.back(), Var::time()));
    }
    traj.segments_.push_back(std::move(coords));
    traj.velocities_.push_back(std::move(vels));
  }

  for (std::size_t k = 1; k + 1 < traj.breakpoints_.size(); ++k) {
    Point at;
    at.t = traj.breakpoints_[k];
    for (int i = 0; i < dimension; ++i) {
      auto idx = static_cast<std::size_t>(i);
      double left = evaluate(traj.segments_[k - 1][idx], at);
      double right = evaluate(traj.segments_[k][idx], at);
      double jump = std::abs(left - right);
      if (jump > 1e-9 * (1.0 + std::abs(left))) {
        throw ContinuityError("trajectory is discontinuous in coordinate " + std::to_string(i + 1) + " at t=" +
                                  std::to_string(at.t) + " (jump " + std::to_string(jump) + ")",
                              i + 1, at.t, jump);
      }
    }
  }

  for (const SampleSite& site : interior_samples(traj, SamplePlan{})) {
    State s = traj.state_on(site.segment, site.t);
    for (double vi : s.v) traj.lipschitz_bound_ = std::max(traj.lipschitz_bound_, std::abs(vi));
  }
  return traj;
}

State eval_state(const PiecewiseTrajectory& traj, double t, const SamplePlan& plan) {
  const auto bps = traj.breakpoints();
  if (t < bps.front() || t > bps.back()) throw PreconditionError("t=" + std::to_string(t) + " lies outside [a, b]");
  std::size_t k = traj.segment_at(t);
  for (std::size_t j = 1; j + 1 < bps.size(); ++j) {
    double length = std::min(bps[j] - bps[j - 1], bps[j + 1] - bps[j]);
    if (std::abs(t - bps[j]) < plan.margin_fraction * length) {
      throw PreconditionError("velocity requested within the margin of breakpoint t=" + std::to_string(bps[j]));
    }
  }
  return traj.state_on(k, t);
}

std::vector<SampleSite> interior_samples(const PiecewiseTrajectory& traj, const SamplePlan& plan) {
  plan.validate();
  std::vector<SampleSite> sites;
  const auto bps = traj.breakpoints();
  for (std::size_t k = 0; k < traj.segment_count(); ++k) {
    for (double t : chebyshev_positions(bps[k], bps[k + 1], plan)) sites.push_back({t, k});
  }
  return sites;
}

double quadrature_along(const PiecewiseTrajectory& traj, const Expr& integrand, const SamplePlan& plan) {
  check_integrand(integrand);
  plan.validate();
  const GaussLegendre& rule = gauss_legendre(plan.quadrature_nodes);
  const auto bps = traj.breakpoints();
  double total = 0.0;
  for (std::size_t k = 0; k < traj.segment_count(); ++k) {
    total += integrate_segment(traj, integrand, rule, k, bps[k], bps[k + 1]);
  }
  return total;
}

RunningIntegral::RunningIntegral(const PiecewiseTrajectory& traj, Expr integrand, const SamplePlan& plan)
    : traj_(&traj), integrand_(std::move(integrand)) {
  check_integrand(integrand_);
  plan.validate();
  rule_ = &gauss_legendre(plan.quadrature_nodes);
  const auto bps = traj.breakpoints();
  double total = 0.0;
  for (std::size_t k = 0; k < traj.segment_count(); ++k) {
    cumulative_.push_back(total);
    total += integrate_segment(traj, integrand_, *rule_, k, bps[k], bps[k + 1]);
  }
}

double RunningIntegral::partial(std::size_t segment, double upper) const {
  double lo = traj_->breakpoints()[segment];
  if (upper <= lo) return 0.0;
  return integrate_segment(*traj_, integrand_, *rule_, segment, lo, upper);
}

double RunningIntegral::operator()(double t) const {
  const auto bps = traj_->breakpoints();
  if (t < bps.front() || t > bps.back()) throw PreconditionError("t=" + std::to_string(t) + " lies outside [a, b]");
  std::size_t k = traj_->segment_at(t);
  return cumulative_[k] + partial(k, t);
}

RunningIntegral running_integral(const PiecewiseTrajectory& traj, const Expr& integrand, const SamplePlan& plan) {
  return RunningIntegral(traj, integrand, plan);
}

}  // namespace noether
