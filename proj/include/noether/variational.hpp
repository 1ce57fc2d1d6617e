#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "noether/expr.hpp"

namespace noether {

struct Interval {
  double a = 0.0;
  double b = 1.0;
};

/// A Lagrangian L(t, x, v) on [a, b] together with its first partials.
class LagrangianSystem {
 public:
  int dimension() const { return dimension_; }
  const Interval& interval() const { return interval_; }
  const Expr& lagrangian() const { return lagrangian_; }

  const Expr& partial_t() const { return partial_t_; }
  std::span<const Expr> partial_x() const { return partial_x_; }
  std::span<const Expr> partial_v() const { return partial_v_; }

  /// The zero-test box this system's identities are checked over.
  SamplingBox default_box(double epsilon = 0.5) const {
    return SamplingBox::standard(dimension_, interval_.a, interval_.b, epsilon);
  }

  friend LagrangianSystem build_system(int dimension, Interval interval, const Expr& lagrangian);

 private:
  int dimension_ = 1;
  Interval interval_;
  Expr lagrangian_;
  Expr partial_t_;
  std::vector<Expr> partial_x_;
  std::vector<Expr> partial_v_;
};

/// Parses the source, caches L_t, L_x, L_v, and checks each partial against
/// central differences at 50 points of the default box. A disagreement
/// raises ValidationError.
LagrangianSystem build_system(int dimension, Interval interval, std::string_view source);
LagrangianSystem build_system(int dimension, Interval interval, const Expr& lagrangian);

/// L - sum_i L_{v_i} v_i, simplified.
Expr hamiltonian_like(const LagrangianSystem& system);

/// E = L(t,x,w) - L(t,x,v) - L_v(t,x,v).(w - v). The Weierstrass condition
/// holds at `base` iff E >= 0 for every probe w.
double weierstrass_excess(const LagrangianSystem& system, const Point& base, std::span<const double> probe);

}  // namespace noether
