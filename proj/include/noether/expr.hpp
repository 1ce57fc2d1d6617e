#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "noether/error.hpp"

namespace noether {

/// Reserved symbols: t (time), s (group parameter), x_i, v_i, a_i (1-based).
enum class VarKind : std::uint8_t { Time, Param, Coord, Vel, Accel };

struct Var {
  VarKind kind = VarKind::Time;
  int index = 0;

  static Var time() { return {VarKind::Time, 0}; }
  static Var param() { return {VarKind::Param, 0}; }
  static Var coord(int i) { return {VarKind::Coord, i}; }
  static Var vel(int i) { return {VarKind::Vel, i}; }
  static Var accel(int i) { return {VarKind::Accel, i}; }

  std::string name() const;
  auto operator<=>(const Var&) const = default;
};

enum class Func : std::uint8_t { Sin, Cos, Exp, Ln, Sqrt, Abs };

std::string_view func_name(Func f);

/// Immutable expression tree with shared structure. Copies are cheap.
///
/// Node kinds:
///   Const, Var            leaves
///   Neg, Call             unary
///   Sub, Div, Pow         binary
///   Add, Mul              n-ary (two or more children)
class Expr {
 public:
  enum class Kind : std::uint8_t { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

  Expr();  // the constant 0
  Expr(double value);  // NOLINT(google-explicit-constructor)
  Expr(Var var);       // NOLINT(google-explicit-constructor)

  static Expr call(Func f, Expr arg);
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr pow(Expr base, Expr exponent);
  static Expr negate(Expr operand);
  static Expr difference(Expr lhs, Expr rhs);
  static Expr quotient(Expr numerator, Expr denominator);

  Kind kind() const;
  double value() const;  // Const only
  Var var() const;       // Var only
  Func func() const;     // Call only
  std::span<const Expr> children() const;
  const Expr& child(std::size_t i) const { return children()[i]; }

  bool is_constant() const { return kind() == Kind::Const; }
  bool is_constant(double c) const { return is_constant() && value() == c; }

  /// Structural equality (exact constants, same shape).
  bool operator==(const Expr& other) const;

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator-(Expr e);
Expr operator+(Expr lhs, Expr rhs);
Expr operator-(Expr lhs, Expr rhs);
Expr operator*(Expr lhs, Expr rhs);
Expr operator/(Expr lhs, Expr rhs);

/// Argument bundle for evaluation. `a` and `s` are optional; evaluating an
/// expression that uses them while absent raises UnassignedVariableError.
struct Point {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> v;
  std::optional<std::vector<double>> a;
  std::optional<double> s;
};

Expr parse(std::string_view source, int dimension);

/// Printed form that parses back to an equivalent tree.
std::string to_string(const Expr& e);

double evaluate(const Expr& e, const Point& p);

struct TracedValue {
  double value = 0.0;
  double max_magnitude = 0.0;  // largest |value| over every node of the tree
};
TracedValue evaluate_traced(const Expr& e, const Point& p);

Expr differentiate(const Expr& e, Var wrt);

/// d/dt along an arc: e_t + sum_i e_{x_i} v_i + sum_i e_{v_i} a_i.
/// Rejects expressions containing s or any a_i.
Expr total_time_derivative(const Expr& e, int dimension);

/// Same chain rule, with s held fixed as a parameter. Still rejects a_i.
Expr total_time_derivative_at_fixed_s(const Expr& e, int dimension);

Expr substitute(const Expr& e, const std::map<Var, Expr>& bindings);
Expr substitute(const Expr& e, Var var, const Expr& replacement);

bool contains(const Expr& e, Var var);
bool contains_kind(const Expr& e, VarKind kind);

/// Semantics-preserving normalization: constant folding, identity elements,
/// flattening, and like-term collection over polynomial subtrees. Atoms that
/// are not polynomial (function calls, real powers, non-monomial
/// denominators) are normalized recursively and treated as opaque symbols.
Expr simplify(const Expr& e);

/// Axis-aligned box over (t, s, x, v, a) used by the randomized zero test.
struct SamplingBox {
  int dimension = 1;
  double t_lo = 0.0, t_hi = 1.0;
  double s_lo = -0.5, s_hi = 0.5;
  double x_bound = 2.0;
  double v_bound = 2.0;
  double a_bound = 2.0;

  static SamplingBox standard(int dimension, double a, double b, double epsilon = 0.5);
};

struct ZeroTestConfig {
  int trials = 64;
  std::uint64_t seed = 20030101;
  double tol = 1e-9;
  int retry_cap = 1000;
};

struct ZeroVerdict {
  bool zero = true;
  bool syntactic = false;   // simplify alone reduced the input to 0
  double max_abs = 0.0;     // largest |value| over the accepted samples
  std::optional<Point> witness;
  double witness_value = 0.0;
};

ZeroVerdict is_identically_zero(const Expr& e, const SamplingBox& box, const ZeroTestConfig& config = {});

}  // namespace noether
