#include "noether/variational.hpp"

#include <cmath>
#include <random>

namespace noether {
namespace {

constexpr int kValidationPoints = 50;
constexpr std::uint64_t kValidationSeed = 0x5eed'0001;

double& coordinate(Point& p, Var var) {
  switch (var.kind) {
    case VarKind::Coord: return p.x[static_cast<std::size_t>(var.index - 1)];
    case VarKind::Vel: return p.v[static_cast<std::size_t>(var.index - 1)];
    default: return p.t;
  }
}

// Central difference with a step scaled to the coordinate.
void validate_partial(const Expr& f, const Expr& partial, Var wrt, const SamplingBox& box) {
  std::mt19937_64 rng(kValidationSeed);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto n = static_cast<std::size_t>(box.dimension);
  int accepted = 0;
  int rejected = 0;
  while (accepted < kValidationPoints) {
    Point p;
    p.t = uniform(box.t_lo, box.t_hi);
    p.x.resize(n);
    p.v.resize(n);
    for (auto& xi : p.x) xi = uniform(-box.x_bound, box.x_bound);
    for (auto& vi : p.v) vi = uniform(-box.v_bound, box.v_bound);
    try {
      double symbolic = evaluate(partial, p);
      double& slot = coordinate(p, wrt);
      double centre = slot;
      double h = 1e-5 * (1.0 + std::abs(centre));
      slot = centre + h;
      double up = evaluate(f, p);
      slot = centre - h;
      double down = evaluate(f, p);
      slot = centre;
      double central = (up - down) / (2.0 * h);
      double roundoff = 1e-10 * (std::abs(up) + std::abs(down)) / h;
      if (std::abs(symbolic - central) > 1e-6 * (1.0 + std::abs(symbolic)) + roundoff) {
        throw ValidationError("partial derivative of " + to_string(f) + " with respect to " + wrt.name() +
                              " disagrees with finite differences at t=" + std::to_string(p.t) + ": symbolic " +
                              std::to_string(symbolic) + ", central " + std::to_string(central));
      }
      ++accepted;
    } catch (const DomainError&) {
      if (++rejected > 20 * kValidationPoints) {
        throw ValidationError("could not find points where " + to_string(f) + " is defined");
      }
    }
  }
}

}  // namespace

LagrangianSystem build_system(int dimension, Interval interval, std::string_view source) {
  return build_system(dimension, interval, parse(source, dimension));
}

LagrangianSystem build_system(int dimension, Interval interval, const Expr& lagrangian) {
  if (dimension < 1) throw PreconditionError("dimension must be at least 1");
  if (!(interval.a < interval.b)) throw PreconditionError("interval must satisfy a < b");
  if (contains_kind(lagrangian, VarKind::Param) || contains_kind(lagrangian, VarKind::Accel)) {
    throw PreconditionError("the Lagrangian may depend only on t, x and v");
  }

  LagrangianSystem sys;
  sys.dimension_ = dimension;
  sys.interval_ = interval;
  sys.lagrangian_ = simplify(lagrangian);
  sys.partial_t_ = differentiate(sys.lagrangian_, Var::time());
  for (int i = 1; i <= dimension; ++i) {
    sys.partial_x_.push_back(differentiate(sys.lagrangian_, Var::coord(i)));
    sys.partial_v_.push_back(differentiate(sys.lagrangian_, Var::vel(i)));
  }

  SamplingBox box = sys.default_box();
  validate_partial(sys.lagrangian_, sys.partial_t_, Var::time(), box);
  for (int i = 1; i <= dimension; ++i) {
    validate_partial(sys.lagrangian_, sys.partial_x_[static_cast<std::size_t>(i - 1)], Var::coord(i), box);
    validate_partial(sys.lagrangian_, sys.partial_v_[static_cast<std::size_t>(i - 1)], Var::vel(i), box);
  }
  return sys;
}

Expr hamiltonian_like(const LagrangianSystem& system) {
  std::vector<Expr> terms{system.lagrangian()};
  for (int i = 1; i <= system.dimension(); ++i) {
    terms.push_back(-(system.partial_v()[static_cast<std::size_t>(i - 1)] * Expr(Var::vel(i))));
  }
  return simplify(Expr::sum(std::move(terms)));
}

double weierstrass_excess(const LagrangianSystem& system, const Point& base, std::span<const double> probe) {
  auto n = static_cast<std::size_t>(system.dimension());
  if (probe.size() != n || base.v.size() != n || base.x.size() != n) {
    throw PreconditionError("weierstrass_excess: dimension mismatch");
  }
  Point shifted = base;
  shifted.v.assign(probe.begin(), probe.end());
  double excess = evaluate(system.lagrangian(), shifted) - evaluate(system.lagrangian(), base);
  for (std::size_t i = 0; i < n; ++i) {
    excess -= evaluate(system.partial_v()[i], base) * (probe[i] - base.v[i]);
  }
  return excess;
}

}  // namespace noether
