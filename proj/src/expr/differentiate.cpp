#include "noether/expr.hpp"

namespace noether {
namespace {

Expr raw_derivative(const Expr& e, Var wrt) {
  if (!contains(e, wrt)) return Expr(0.0);
  switch (e.kind()) {
    case Expr::Kind::Const: return Expr(0.0);
    case Expr::Kind::Var: return Expr(1.0);
    case Expr::Kind::Neg: return -raw_derivative(e.child(0), wrt);
    case Expr::Kind::Add: {
      std::vector<Expr> terms;
      for (const Expr& c : e.children()) {
        if (contains(c, wrt)) terms.push_back(raw_derivative(c, wrt));
      }
      return Expr::sum(std::move(terms));
    }
    case Expr::Kind::Sub: return raw_derivative(e.child(0), wrt) - raw_derivative(e.child(1), wrt);
    case Expr::Kind::Mul: {
      auto factors = e.children();
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (!contains(factors[i], wrt)) continue;
        std::vector<Expr> term;
        for (std::size_t j = 0; j < factors.size(); ++j) {
          term.push_back(j == i ? raw_derivative(factors[j], wrt) : factors[j]);
        }
        terms.push_back(Expr::product(std::move(term)));
      }
      return Expr::sum(std::move(terms));
    }
    case Expr::Kind::Div: {
      const Expr& num = e.child(0);
      const Expr& den = e.child(1);
      if (!contains(den, wrt)) return raw_derivative(num, wrt) / den;
      return (raw_derivative(num, wrt) * den - num * raw_derivative(den, wrt)) / Expr::pow(den, Expr(2.0));
    }
    case Expr::Kind::Pow: {
      const Expr& base = e.child(0);
      const Expr& exponent = e.child(1);
      if (!contains(exponent, wrt)) {
        return Expr::product({exponent, Expr::pow(base, exponent - Expr(1.0)), raw_derivative(base, wrt)});
      }
      // d(f^g) = f^g * (g' ln f + g f' / f)
      Expr log_term = raw_derivative(exponent, wrt) * Expr::call(Func::Ln, base);
      if (contains(base, wrt)) log_term = log_term + exponent * raw_derivative(base, wrt) / base;
      return e * log_term;
    }
    case Expr::Kind::Call: {
      const Expr& u = e.child(0);
      Expr du = raw_derivative(u, wrt);
      switch (e.func()) {
        case Func::Sin: return Expr::call(Func::Cos, u) * du;
        case Func::Cos: return -(Expr::call(Func::Sin, u) * du);
        case Func::Exp: return e * du;
        case Func::Ln: return du / u;
        case Func::Sqrt: return du / (Expr(2.0) * e);
        // sign(u) written as u/|u|; undefined exactly at the kink.
        case Func::Abs: return u / e * du;
      }
    }
  }
  return Expr(0.0);
}

Expr chain_rule(const Expr& e, int dimension) {
  std::vector<Expr> terms;
  terms.push_back(raw_derivative(e, Var::time()));
  for (int i = 1; i <= dimension; ++i) {
    if (contains(e, Var::coord(i))) terms.push_back(raw_derivative(e, Var::coord(i)) * Expr(Var::vel(i)));
    if (contains(e, Var::vel(i))) terms.push_back(raw_derivative(e, Var::vel(i)) * Expr(Var::accel(i)));
  }
  return simplify(Expr::sum(std::move(terms)));
}

}  // namespace

Expr differentiate(const Expr& e, Var wrt) { return simplify(raw_derivative(e, wrt)); }

Expr total_time_derivative(const Expr& e, int dimension) {
  if (contains_kind(e, VarKind::Param)) {
    throw PreconditionError("total time derivative of an expression containing s: " + to_string(e));
  }
  return total_time_derivative_at_fixed_s(e, dimension);
}

Expr total_time_derivative_at_fixed_s(const Expr& e, int dimension) {
  if (contains_kind(e, VarKind::Accel)) {
    throw PreconditionError("total time derivative of an expression containing an acceleration: " + to_string(e));
  }
  return chain_rule(e, dimension);
}

}  // namespace noether
