#include "noether/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace noether {

std::string_view status_name(Status s) { return s == Status::Pass ? "pass" : "fail"; }

namespace {

double median(std::vector<double> values) {
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

// Shared median/residual scheme for the integrated conditions. `field[j][i]`
// is component i of the sampled quantity at site j.
ConditionVerdict constancy_verdict(const std::vector<SampleSite>& sites, const std::vector<std::vector<double>>& field,
                                   double tol, const std::string& label) {
  const std::size_t components = field.empty() ? 0 : field.front().size();
  std::vector<double> centre(components);
  for (std::size_t i = 0; i < components; ++i) {
    std::vector<double> column;
    column.reserve(field.size());
    for (const auto& row : field) column.push_back(row[i]);
    centre[i] = median(std::move(column));
  }

  ConditionVerdict out;
  std::size_t worst_site = 0;
  std::size_t worst_component = 0;
  for (std::size_t j = 0; j < field.size(); ++j) {
    for (std::size_t i = 0; i < components; ++i) {
      double d = std::abs(field[j][i] - centre[i]);
      if (d > out.residual) {
        out.residual = d;
        worst_site = j;
        worst_component = i;
      }
    }
  }
  double centre_norm = 0.0;
  for (double c : centre) centre_norm = std::max(centre_norm, std::abs(c));
  if (out.residual > tol * (1.0 + centre_norm)) {
    out.status = Status::Fail;
    Witness w;
    w.t = sites[worst_site].t;
    w.detail = label + (components > 1 ? " component " + std::to_string(worst_component + 1) : std::string()) +
               " is " + std::to_string(field[worst_site][worst_component]) + ", fitted constant " +
               std::to_string(centre[worst_component]);
    out.witness = std::move(w);
  }
  return out;
}

void require_same_dimension(const LagrangianSystem& system, const PiecewiseTrajectory& traj) {
  if (system.dimension() != traj.dimension()) {
    throw PreconditionError("trajectory dimension " + std::to_string(traj.dimension()) +
                            " does not match system dimension " + std::to_string(system.dimension()));
  }
}

}  // namespace

ConditionVerdict check_euler_lagrange(const LagrangianSystem& system, const PiecewiseTrajectory& traj,
                                      const SamplePlan& plan, double tol) {
  require_same_dimension(system, traj);
  const auto n = static_cast<std::size_t>(system.dimension());
  std::vector<RunningIntegral> forces;
  for (std::size_t i = 0; i < n; ++i) forces.emplace_back(traj, system.partial_x()[i], plan);

  std::vector<SampleSite> sites = interior_samples(traj, plan);
  std::vector<std::vector<double>> field;
  field.reserve(sites.size());
  for (const SampleSite& site : sites) {
    Point p = traj.point_on(site.segment, site.t);
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = evaluate(system.partial_v()[i], p) - forces[i](site.t);
    field.push_back(std::move(row));
  }
  return constancy_verdict(sites, field, tol, "L_v - int L_x");
}

ConditionVerdict check_dubois_reymond(const LagrangianSystem& system, const PiecewiseTrajectory& traj,
                                      const SamplePlan& plan, double tol) {
  require_same_dimension(system, traj);
  Expr h = hamiltonian_like(system);
  RunningIntegral drift(traj, system.partial_t(), plan);

  std::vector<SampleSite> sites = interior_samples(traj, plan);
  std::vector<std::vector<double>> field;
  field.reserve(sites.size());
  for (const SampleSite& site : sites) {
    Point p = traj.point_on(site.segment, site.t);
    field.push_back({evaluate(h, p) - drift(site.t)});
  }
  return constancy_verdict(sites, field, tol, "(L - L_v.v) - int L_t");
}

ConditionVerdict check_weierstrass(const LagrangianSystem& system, const PiecewiseTrajectory& traj,
                                   const SamplePlan& plan, double tol, const ProbeConfig& probes) {
  require_same_dimension(system, traj);
  const auto n = static_cast<std::size_t>(system.dimension());
  const double bound = probes.bound.value_or(std::max(2.0 * traj.lipschitz_bound(), 2.0));
  if (!(bound > 0.0) || !std::isfinite(bound)) throw PreconditionError("probe bound must be positive and finite");

  std::vector<std::vector<double>> candidates;
  if (probes.grid > 0) {
    std::vector<double> axis(static_cast<std::size_t>(probes.grid));
    for (int k = 0; k < probes.grid; ++k) {
      axis[static_cast<std::size_t>(k)] =
          probes.grid == 1 ? 0.0 : -bound + 2.0 * bound * k / static_cast<double>(probes.grid - 1);
    }
    std::vector<std::size_t> odometer(n, 0);
    for (;;) {
      std::vector<double> w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = axis[odometer[i]];
      candidates.push_back(std::move(w));
      std::size_t i = 0;
      while (i < n && ++odometer[i] == axis.size()) odometer[i++] = 0;
      if (i == n) break;
    }
  }
  std::mt19937_64 rng(probes.seed);
  std::uniform_real_distribution<double> uniform(-bound, bound);
  for (int k = 0; k < probes.random; ++k) {
    std::vector<double> w(n);
    for (double& wi : w) wi = uniform(rng);
    candidates.push_back(std::move(w));
  }

  double min_excess = std::numeric_limits<double>::infinity();
  Witness worst;
  for (const SampleSite& site : interior_samples(traj, plan)) {
    Point base = traj.point_on(site.segment, site.t);
    for (const auto& w : candidates) {
      double e = weierstrass_excess(system, base, w);
      if (e < min_excess) {
        min_excess = e;
        worst.t = site.t;
        worst.probe = w;
        worst.excess = e;
      }
    }
  }

  ConditionVerdict out;
  out.residual = std::max(0.0, -min_excess);
  if (min_excess < -tol) {
    out.status = Status::Fail;
    worst.detail = "excess " + std::to_string(worst.excess) + " at probe velocity";
    for (double wi : worst.probe) worst.detail += " " + std::to_string(wi);
    out.witness = std::move(worst);
  }
  return out;
}

ConservationResult verify_conservation(const Expr& quantity, const PiecewiseTrajectory& traj,
                                       const SamplePlan& plan, double tol) {
  if (contains_kind(quantity, VarKind::Param) || contains_kind(quantity, VarKind::Accel)) {
    throw PreconditionError("conserved quantity may depend only on t, x and v: " + to_string(quantity));
  }
  ConservationResult out;
  for (const SampleSite& site : interior_samples(traj, plan)) {
    out.values.push_back(evaluate(quantity, traj.point_on(site.segment, site.t)));
  }
  auto [lo, hi] = std::minmax_element(out.values.begin(), out.values.end());
  out.deviation = *hi - *lo;
  double sum = 0.0;
  for (double v : out.values) {
    sum += v;
    out.scale = std::max(out.scale, std::abs(v));
  }
  out.mean = sum / static_cast<double>(out.values.size());
  out.conserved = out.deviation <= tol * (1.0 + out.scale);
  return out;
}

AnalysisReport analyze(const LagrangianSystem& system, const TransformationFamily& family,
                       const PiecewiseTrajectory& traj, const AnalysisConfig& config) {
  require_same_dimension(system, traj);
  SamplingBox box = system.default_box(config.epsilon);
  box.x_bound = box.v_bound = box.a_bound = config.state_bound;

  AnalysisReport report;
  report.invariance = check_quasi_invariance(system, family, box, config.zero);
  report.noether = noether_quantity(system, family);
  report.euler_lagrange = check_euler_lagrange(system, traj, config.plan, config.tol);
  report.dubois_reymond = check_dubois_reymond(system, traj, config.plan, config.tol);
  report.weierstrass = check_weierstrass(system, traj, config.plan, config.tol, config.probes);
  report.pontryagin_class = report.euler_lagrange.passed() && report.weierstrass.passed();
  report.theorem4_class = report.euler_lagrange.passed() && report.dubois_reymond.passed();
  report.conservation = verify_conservation(report.noether, traj, config.plan, config.tol);

  if (report.invariance.invariant && report.theorem4_class && !report.conservation.conserved) {
    report.finding = "invariant problem with an Euler-Lagrange and DuBois-Reymond extremal whose Noether quantity "
                     "varies by " +
                     std::to_string(report.conservation.deviation);
  }
  return report;
}

}  // namespace noether
