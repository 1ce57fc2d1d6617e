#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "noether/expr.hpp"
#include "noether/trajectory.hpp"
#include "noether/variational.hpp"

namespace noether {

/// One-parameter family (t, x) -> (T(t,x,v,s), X(t,x,v,s)) with gauge term
/// Phi(t,x,v). `tau` and `xi` are the generators dT/ds and dX/ds at s = 0.
struct TransformationFamily {
  Expr time;
  std::vector<Expr> space;
  Expr gauge;
  Expr tau;
  std::vector<Expr> xi;

  bool gauge_free() const { return gauge.is_constant(0.0); }
  /// T and X depend on (t, x, s) only.
  bool velocity_free() const;
};

/// Checks that the family is the identity at s = 0 (T|s=0 = t, X|s=0 = x)
/// and caches the generators. A failing component raises IdentityViolation.
TransformationFamily build_family(const LagrangianSystem& system, std::string_view time,
                                  std::span<const std::string> space, std::string_view gauge = "0",
                                  const ZeroTestConfig& config = {});
TransformationFamily build_family(const LagrangianSystem& system, Expr time, std::vector<Expr> space,
                                  Expr gauge = Expr(0.0), const ZeroTestConfig& config = {});

/// R(t,x,v,a) = D_t Phi - L_t tau - L_x.xi - L_v.(D_t xi - v D_t tau) - L D_t tau.
/// The family leaves the functional quasi-invariant iff R vanishes identically.
Expr quasi_invariance_residual(const LagrangianSystem& system, const TransformationFamily& family);

struct InvarianceVerdict {
  bool invariant = true;
  double max_residual = 0.0;
  std::optional<Point> witness;
  double witness_value = 0.0;
  Expr residual;
};

InvarianceVerdict check_quasi_invariance(const LagrangianSystem& system, const TransformationFamily& family,
                                         const SamplingBox& box, const ZeroTestConfig& config = {});

struct ClassicalInvarianceConfig {
  std::vector<double> s_samples{-0.1, -0.05, -0.01, 0.01, 0.05, 0.1};
  double tol = 1e-8;
  int quadrature_nodes = 32;
};

struct ClassicalGap {
  double s = 0.0;
  std::size_t arc = 0;
  double gap = 0.0;
};

struct ClassicalVerdict {
  bool invariant = true;
  double max_gap = 0.0;
  std::optional<ClassicalGap> witness;
};

/// Finite-s check: compares the integral of L over each transformed test arc
/// with the original one. Requires a gauge-free, velocity-free family.
ClassicalVerdict check_classical_invariance(const LagrangianSystem& system, const TransformationFamily& family,
                                            std::span<const PiecewiseTrajectory> arcs,
                                            const ClassicalInvarianceConfig& config = {});

/// (L - L_v.v) tau + L_v.xi - Phi, simplified.
Expr noether_quantity(const LagrangianSystem& system, const TransformationFamily& family);

/// L_v . dh_x/ds|0 + (L - L_v.v) dh_t/ds|0 for gauge-free, velocity-free
/// families. Raises PreconditionError otherwise.
Expr classical_noether_quantity(const LagrangianSystem& system, const TransformationFamily& family);

}  // namespace noether
