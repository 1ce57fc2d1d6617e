#include "noether/expr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "node.hpp"

namespace noether {

std::string Var::name() const {
  switch (kind) {
    case VarKind::Time: return "t";
    case VarKind::Param: return "s";
    case VarKind::Coord: return "x" + std::to_string(index);
    case VarKind::Vel: return "v" + std::to_string(index);
    case VarKind::Accel: return "a" + std::to_string(index);
  }
  return "?";
}

std::string_view func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    case Func::Ln: return "ln";
    case Func::Sqrt: return "sqrt";
    case Func::Abs: return "abs";
  }
  return "?";
}

namespace {

Expr::Node make_node(Expr::Kind kind, std::vector<Expr> children) {
  Expr::Node n;
  n.kind = kind;
  n.children = std::move(children);
  return n;
}

}  // namespace

Expr::Expr() : Expr(0.0) {}

Expr::Expr(double value) {
  Node n;
  n.kind = Kind::Const;
  n.value = value;
  node_ = std::make_shared<const Node>(std::move(n));
}

Expr::Expr(Var var) {
  Node n;
  n.kind = Kind::Var;
  n.var = var;
  node_ = std::make_shared<const Node>(std::move(n));
}

Expr Expr::call(Func f, Expr arg) {
  Node n = make_node(Kind::Call, {std::move(arg)});
  n.func = f;
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::sum(std::vector<Expr> terms) {
  if (terms.empty()) return Expr(0.0);
  if (terms.size() == 1) return terms.front();
  return Expr(std::make_shared<const Node>(make_node(Kind::Add, std::move(terms))));
}

Expr Expr::product(std::vector<Expr> factors) {
  if (factors.empty()) return Expr(1.0);
  if (factors.size() == 1) return factors.front();
  return Expr(std::make_shared<const Node>(make_node(Kind::Mul, std::move(factors))));
}

Expr Expr::pow(Expr base, Expr exponent) {
  return Expr(std::make_shared<const Node>(make_node(Kind::Pow, {std::move(base), std::move(exponent)})));
}

Expr Expr::negate(Expr operand) {
  return Expr(std::make_shared<const Node>(make_node(Kind::Neg, {std::move(operand)})));
}

Expr Expr::difference(Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(make_node(Kind::Sub, {std::move(lhs), std::move(rhs)})));
}

Expr Expr::quotient(Expr numerator, Expr denominator) {
  return Expr(std::make_shared<const Node>(make_node(Kind::Div, {std::move(numerator), std::move(denominator)})));
}

Expr operator-(Expr e) { return Expr::negate(std::move(e)); }
Expr operator-(Expr lhs, Expr rhs) { return Expr::difference(std::move(lhs), std::move(rhs)); }
Expr operator/(Expr lhs, Expr rhs) { return Expr::quotient(std::move(lhs), std::move(rhs)); }
Expr operator+(Expr lhs, Expr rhs) { return Expr::sum({std::move(lhs), std::move(rhs)}); }
Expr operator*(Expr lhs, Expr rhs) { return Expr::product({std::move(lhs), std::move(rhs)}); }

Expr::Kind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->value; }
Var Expr::var() const { return node_->var; }
Func Expr::func() const { return node_->func; }
std::span<const Expr> Expr::children() const { return node_->children; }

bool Expr::operator==(const Expr& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::Const: return a.value == b.value;
    case Kind::Var: return a.var == b.var;
    case Kind::Call:
      if (a.func != b.func) return false;
      break;
    default: break;
  }
  return a.children == b.children;
}

namespace {

double lookup(const Var& var, const Point& p) {
  auto component = [&](const std::vector<double>& values, const char* what) {
    if (var.index < 1 || static_cast<std::size_t>(var.index) > values.size()) {
      throw UnassignedVariableError(std::string("variable ") + var.name() + " is not assigned (" + what + " has " +
                                    std::to_string(values.size()) + " components)");
    }
    return values[static_cast<std::size_t>(var.index - 1)];
  };
  switch (var.kind) {
    case VarKind::Time: return p.t;
    case VarKind::Param:
      if (!p.s) throw UnassignedVariableError("variable s is not assigned");
      return *p.s;
    case VarKind::Coord: return component(p.x, "x");
    case VarKind::Vel: return component(p.v, "v");
    case VarKind::Accel:
      if (!p.a) throw UnassignedVariableError("variable " + var.name() + " is not assigned");
      return component(*p.a, "a");
  }
  return 0.0;
}

double apply(Func f, double u) {
  switch (f) {
    case Func::Sin: return std::sin(u);
    case Func::Cos: return std::cos(u);
    case Func::Exp: return std::exp(u);
    case Func::Ln:
      if (!(u > 0.0)) throw DomainError("ln of nonpositive value " + std::to_string(u));
      return std::log(u);
    case Func::Sqrt:
      if (u < 0.0) throw DomainError("sqrt of negative value " + std::to_string(u));
      return std::sqrt(u);
    case Func::Abs: return std::abs(u);
  }
  return 0.0;
}

class Evaluator {
 public:
  explicit Evaluator(const Point& p) : point_(p) {}

  double run(const Expr& e) { return eval(e); }
  double max_magnitude() const { return max_magnitude_; }

 private:
  double eval(const Expr& e) {
    double r = 0.0;
    switch (e.kind()) {
      case Expr::Kind::Const: r = e.value(); break;
      case Expr::Kind::Var: r = lookup(e.var(), point_); break;
      case Expr::Kind::Neg: r = -eval(e.child(0)); break;
      case Expr::Kind::Add:
        for (const Expr& c : e.children()) r += eval(c);
        break;
      case Expr::Kind::Sub: r = eval(e.child(0)) - eval(e.child(1)); break;
      case Expr::Kind::Mul:
        r = 1.0;
        for (const Expr& c : e.children()) r *= eval(c);
        break;
      case Expr::Kind::Div: {
        double num = eval(e.child(0));
        double den = eval(e.child(1));
        if (den == 0.0) throw DomainError("division by zero");
        r = num / den;
        break;
      }
      case Expr::Kind::Pow: r = std::pow(eval(e.child(0)), eval(e.child(1))); break;
      case Expr::Kind::Call: r = apply(e.func(), eval(e.child(0))); break;
    }
    if (!std::isfinite(r)) throw DomainError("nonfinite value while evaluating " + to_string(e));
    max_magnitude_ = std::max(max_magnitude_, std::abs(r));
    return r;
  }

  const Point& point_;
  double max_magnitude_ = 0.0;
};

Expr rebuild(const Expr& e, std::vector<Expr> children) {
  switch (e.kind()) {
    case Expr::Kind::Neg: return Expr::negate(std::move(children[0]));
    case Expr::Kind::Add: return Expr::sum(std::move(children));
    case Expr::Kind::Sub: return Expr::difference(std::move(children[0]), std::move(children[1]));
    case Expr::Kind::Mul: return Expr::product(std::move(children));
    case Expr::Kind::Div: return Expr::quotient(std::move(children[0]), std::move(children[1]));
    case Expr::Kind::Pow: return Expr::pow(std::move(children[0]), std::move(children[1]));
    case Expr::Kind::Call: return Expr::call(e.func(), std::move(children[0]));
    default: return e;
  }
}

}  // namespace

double evaluate(const Expr& e, const Point& p) { return Evaluator(p).run(e); }

TracedValue evaluate_traced(const Expr& e, const Point& p) {
  Evaluator ev(p);
  TracedValue out;
  out.value = ev.run(e);
  out.max_magnitude = ev.max_magnitude();
  return out;
}

Expr substitute(const Expr& e, const std::map<Var, Expr>& bindings) {
  if (e.kind() == Expr::Kind::Var) {
    auto it = bindings.find(e.var());
    return it == bindings.end() ? e : it->second;
  }
  if (e.children().empty()) return e;
  std::vector<Expr> children;
  children.reserve(e.children().size());
  for (const Expr& c : e.children()) children.push_back(substitute(c, bindings));
  return rebuild(e, std::move(children));
}

Expr substitute(const Expr& e, Var var, const Expr& replacement) {
  return substitute(e, std::map<Var, Expr>{{var, replacement}});
}

bool contains(const Expr& e, Var var) {
  if (e.kind() == Expr::Kind::Var) return e.var() == var;
  return std::any_of(e.children().begin(), e.children().end(), [&](const Expr& c) { return contains(c, var); });
}

bool contains_kind(const Expr& e, VarKind kind) {
  if (e.kind() == Expr::Kind::Var) return e.var().kind == kind;
  return std::any_of(e.children().begin(), e.children().end(),
                     [&](const Expr& c) { return contains_kind(c, kind); });
}

}  // namespace noether
