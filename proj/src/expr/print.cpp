#include <charconv>
#include <cmath>

#include "noether/expr.hpp"

namespace noether {
namespace {

// Binding strength used to decide where parentheses are needed.
constexpr int kSum = 1;
constexpr int kProduct = 2;
constexpr int kUnary = 3;
constexpr int kPower = 4;
constexpr int kAtom = 5;

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

bool leads_with_minus(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Const: return e.value() < 0.0;
    case Expr::Kind::Neg: return true;
    case Expr::Kind::Mul: return leads_with_minus(e.child(0)) && e.child(0).is_constant();
    case Expr::Kind::Div: return leads_with_minus(e.child(0));
    default: return false;
  }
}

int level(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Const: return e.value() < 0.0 ? kUnary : kAtom;
    case Expr::Kind::Var:
    case Expr::Kind::Call: return kAtom;
    case Expr::Kind::Pow: return kPower;
    case Expr::Kind::Neg: return kUnary;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return kProduct;
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return kSum;
  }
  return kAtom;
}

// Absolute value of a term that leads_with_minus().
Expr negated(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Const: return Expr(-e.value());
    case Expr::Kind::Neg: return e.child(0);
    case Expr::Kind::Mul: {
      std::vector<Expr> rest(e.children().begin() + 1, e.children().end());
      double c = -e.child(0).value();
      if (c != 1.0) rest.insert(rest.begin(), Expr(c));
      return Expr::product(std::move(rest));
    }
    case Expr::Kind::Div: return Expr::quotient(negated(e.child(0)), e.child(1));
    default: return e;
  }
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print(e, out);
  if (wrap) out += ')';
}

void print(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Expr::Kind::Const: out += format_number(e.value()); return;
    case Expr::Kind::Var: out += e.var().name(); return;
    case Expr::Kind::Call:
      out += func_name(e.func());
      print_wrapped(e.child(0), true, out);
      return;
    case Expr::Kind::Neg:
      out += '-';
      print_wrapped(e.child(0), level(e.child(0)) < kUnary || leads_with_minus(e.child(0)), out);
      return;
    case Expr::Kind::Add: {
      bool first = true;
      for (const Expr& c : e.children()) {
        if (first) {
          print(c, out);
          first = false;
        } else if (leads_with_minus(c)) {
          out += " - ";
          Expr pos = negated(c);
          print_wrapped(pos, level(pos) <= kSum, out);
        } else {
          out += " + ";
          print_wrapped(c, level(c) <= kSum, out);
        }
      }
      return;
    }
    case Expr::Kind::Sub:
      print(e.child(0), out);
      out += " - ";
      print_wrapped(e.child(1), level(e.child(1)) <= kSum || leads_with_minus(e.child(1)), out);
      return;
    case Expr::Kind::Mul: {
      auto children = e.children();
      std::size_t start = 0;
      if (children.size() > 1 && children[0].is_constant(-1.0)) {
        out += '-';
        const Expr& next = children[1];
        print_wrapped(next, level(next) < kUnary || leads_with_minus(next), out);
        start = 2;
      } else {
        print_wrapped(children[0], level(children[0]) < kProduct, out);
        start = 1;
      }
      for (std::size_t i = start; i < children.size(); ++i) {
        out += '*';
        print_wrapped(children[i], level(children[i]) <= kProduct || leads_with_minus(children[i]), out);
      }
      return;
    }
    case Expr::Kind::Div:
      print_wrapped(e.child(0), level(e.child(0)) < kProduct, out);
      out += '/';
      print_wrapped(e.child(1), level(e.child(1)) <= kProduct || leads_with_minus(e.child(1)), out);
      return;
    case Expr::Kind::Pow:
      print_wrapped(e.child(0), level(e.child(0)) <= kPower, out);
      out += '^';
      print_wrapped(e.child(1), level(e.child(1)) < kPower, out);
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace noether
