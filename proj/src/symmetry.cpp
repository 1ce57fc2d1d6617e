#include "noether/symmetry.hpp"

#include <cmath>

namespace noether {
namespace {

Expr generator(const Expr& component) {
  return simplify(substitute(differentiate(component, Var::param()), Var::param(), Expr(0.0)));
}

std::string describe(const Point& p) {
  std::string out = "t=" + std::to_string(p.t);
  for (std::size_t i = 0; i < p.x.size(); ++i) out += ", x" + std::to_string(i + 1) + "=" + std::to_string(p.x[i]);
  for (std::size_t i = 0; i < p.v.size(); ++i) out += ", v" + std::to_string(i + 1) + "=" + std::to_string(p.v[i]);
  return out;
}

void require_identity(const Expr& component, const Expr& expected, const std::string& name, const SamplingBox& box,
                      const ZeroTestConfig& config) {
  Expr at_zero = substitute(component, Var::param(), Expr(0.0));
  ZeroVerdict v = is_identically_zero(at_zero - expected, box, config);
  if (!v.zero) {
    throw IdentityViolation(name + " does not reduce to " + to_string(expected) + " at s=0 (" +
                                describe(*v.witness) + ", difference " + std::to_string(v.witness_value) + ")",
                            name);
  }
}

}  // namespace

bool TransformationFamily::velocity_free() const {
  if (contains_kind(time, VarKind::Vel)) return false;
  for (const Expr& e : space) {
    if (contains_kind(e, VarKind::Vel)) return false;
  }
  return true;
}

TransformationFamily build_family(const LagrangianSystem& system, std::string_view time,
                                  std::span<const std::string> space, std::string_view gauge,
                                  const ZeroTestConfig& config) {
  const int n = system.dimension();
  std::vector<Expr> components;
  for (const std::string& src : space) components.push_back(parse(src, n));
  return build_family(system, parse(time, n), std::move(components), parse(gauge, n), config);
}

TransformationFamily build_family(const LagrangianSystem& system, Expr time, std::vector<Expr> space, Expr gauge,
                                  const ZeroTestConfig& config) {
  const int n = system.dimension();
  if (space.size() != static_cast<std::size_t>(n)) {
    throw PreconditionError("family needs " + std::to_string(n) + " space components, got " +
                            std::to_string(space.size()));
  }
  auto no_acceleration = [](const Expr& e, const std::string& name) {
    if (contains_kind(e, VarKind::Accel)) throw PreconditionError(name + " may not depend on accelerations");
  };
  no_acceleration(time, "T");
  for (std::size_t i = 0; i < space.size(); ++i) no_acceleration(space[i], "X" + std::to_string(i + 1));
  no_acceleration(gauge, "gauge");
  if (contains_kind(gauge, VarKind::Param)) throw PreconditionError("gauge term may not depend on s");

  SamplingBox box = system.default_box();
  require_identity(time, Expr(Var::time()), "T", box, config);
  for (int i = 1; i <= n; ++i) {
    require_identity(space[static_cast<std::size_t>(i - 1)], Expr(Var::coord(i)), "X" + std::to_string(i), box,
                     config);
  }

  TransformationFamily fam;
  fam.time = simplify(time);
  for (const Expr& e : space) fam.space.push_back(simplify(e));
  fam.gauge = simplify(gauge);
  fam.tau = generator(fam.time);
  for (const Expr& e : fam.space) fam.xi.push_back(generator(e));
  return fam;
}

Expr quasi_invariance_residual(const LagrangianSystem& system, const TransformationFamily& family) {
  const int n = system.dimension();
  Expr dt_tau = total_time_derivative(family.tau, n);
  std::vector<Expr> terms;
  terms.push_back(total_time_derivative(family.gauge, n));
  terms.push_back(-(system.partial_t() * family.tau));
  for (int i = 0; i < n; ++i) {
    auto k = static_cast<std::size_t>(i);
    Expr dt_xi = total_time_derivative(family.xi[k], n);
    terms.push_back(-(system.partial_x()[k] * family.xi[k]));
    terms.push_back(-(system.partial_v()[k] * (dt_xi - Expr(Var::vel(i + 1)) * dt_tau)));
  }
  terms.push_back(-(system.lagrangian() * dt_tau));
  return simplify(Expr::sum(std::move(terms)));
}

InvarianceVerdict check_quasi_invariance(const LagrangianSystem& system, const TransformationFamily& family,
                                         const SamplingBox& box, const ZeroTestConfig& config) {
  InvarianceVerdict out;
  out.residual = quasi_invariance_residual(system, family);
  ZeroVerdict z = is_identically_zero(out.residual, box, config);
  out.invariant = z.zero;
  out.max_residual = z.max_abs;
  out.witness = std::move(z.witness);
  out.witness_value = z.witness_value;
  return out;
}

ClassicalVerdict check_classical_invariance(const LagrangianSystem& system, const TransformationFamily& family,
                                            std::span<const PiecewiseTrajectory> arcs,
                                            const ClassicalInvarianceConfig& config) {
  if (!family.gauge_free() || !family.velocity_free()) {
    throw PreconditionError("classical invariance needs a gauge-free family depending on (t, x) only");
  }
  const int n = system.dimension();
  Expr dT = total_time_derivative_at_fixed_s(family.time, n);
  std::map<Var, Expr> bindings{{Var::time(), family.time}};
  for (int i = 1; i <= n; ++i) {
    auto k = static_cast<std::size_t>(i - 1);
    bindings[Var::coord(i)] = family.space[k];
    bindings[Var::vel(i)] = total_time_derivative_at_fixed_s(family.space[k], n) / dT;
  }
  Expr transformed = substitute(system.lagrangian(), bindings) * dT;

  SamplePlan plan;
  plan.quadrature_nodes = config.quadrature_nodes;
  const GaussLegendre& rule = gauss_legendre(config.quadrature_nodes);

  ClassicalVerdict out;
  for (std::size_t arc_index = 0; arc_index < arcs.size(); ++arc_index) {
    const PiecewiseTrajectory& arc = arcs[arc_index];
    if (arc.dimension() != n) throw PreconditionError("test arc dimension does not match the system");
    double original = quadrature_along(arc, system.lagrangian(), plan);
    const auto bps = arc.breakpoints();
    for (double s : config.s_samples) {
      double image = 0.0;
      for (std::size_t k = 0; k < arc.segment_count(); ++k) {
        double mid = 0.5 * (bps[k] + bps[k + 1]);
        double half = 0.5 * (bps[k + 1] - bps[k]);
        double sum = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
          Point p = arc.point_on(k, mid + half * rule.nodes[j]);
          p.s = s;
          if (!(evaluate(dT, p) > 0.0)) {
            throw PreconditionError("time reparametrization is not increasing at t=" + std::to_string(p.t) +
                                    ", s=" + std::to_string(s));
          }
          sum += rule.weights[j] * evaluate(transformed, p);
        }
        image += half * sum;
      }
      double gap = std::abs(image - original);
      if (gap > out.max_gap) out.max_gap = gap;
      if (gap > config.tol * (1.0 + std::abs(original)) && out.invariant) {
        out.invariant = false;
        out.witness = ClassicalGap{s, arc_index, gap};
      }
    }
  }
  return out;
}

Expr noether_quantity(const LagrangianSystem& system, const TransformationFamily& family) {
  std::vector<Expr> terms{hamiltonian_like(system) * family.tau};
  for (int i = 0; i < system.dimension(); ++i) {
    auto k = static_cast<std::size_t>(i);
    terms.push_back(system.partial_v()[k] * family.xi[k]);
  }
  terms.push_back(-family.gauge);
  return simplify(Expr::sum(std::move(terms)));
}

Expr classical_noether_quantity(const LagrangianSystem& system, const TransformationFamily& family) {
  if (!family.gauge_free() || !family.velocity_free()) {
    throw PreconditionError("the classical conserved quantity needs a gauge-free family depending on (t, x) only");
  }
  std::vector<Expr> momentum_terms;
  std::vector<Expr> energy_terms{system.lagrangian()};
  for (int i = 1; i <= system.dimension(); ++i) {
    auto k = static_cast<std::size_t>(i - 1);
    const Expr& pv = system.partial_v()[k];
    Expr dhx = substitute(differentiate(family.space[k], Var::param()), Var::param(), Expr(0.0));
    momentum_terms.push_back(pv * dhx);
    energy_terms.push_back(-(pv * Expr(Var::vel(i))));
  }
  Expr dht = substitute(differentiate(family.time, Var::param()), Var::param(), Expr(0.0));
  return simplify(Expr::sum(std::move(momentum_terms)) + Expr::sum(std::move(energy_terms)) * dht);
}

}  // namespace noether
