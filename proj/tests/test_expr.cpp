#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "noether/expr.hpp"

using namespace noether;
using noether::testing::Gen;

namespace {

Point pt(double t, std::vector<double> x, std::vector<double> v) {
  Point p;
  p.t = t;
  p.x = std::move(x);
  p.v = std::move(v);
  return p;
}

bool evaluates(const Expr& e, const Point& p, double& out) {
  try {
    out = evaluate(e, p);
    return true;
  } catch (const EvaluationError&) {
    return false;
  }
}

}  // namespace

TEST_CASE("parse builds the expected tree for a squared difference") {
  Expr e = parse("(v1^2 - 1)^2", 1);
  REQUIRE(e.kind() == Expr::Kind::Pow);
  CHECK(e.child(1).is_constant(2.0));
  const Expr& base = e.child(0);
  REQUIRE(base.kind() == Expr::Kind::Sub);
  CHECK(base.child(1).is_constant(1.0));
  REQUIRE(base.child(0).kind() == Expr::Kind::Pow);
  CHECK(base.child(0).child(0) == Expr(Var::vel(1)));
  CHECK(base.child(0).child(1).is_constant(2.0));
}

TEST_CASE("parse atoms") {
  CHECK(parse("t", 1) == Expr(Var::time()));
  CHECK(parse("s", 1) == Expr(Var::param()));
  CHECK(parse("a2", 2) == Expr(Var::accel(2)));
  CHECK(parse(" 2.5e-1 ", 1).is_constant(0.25));
}

TEST_CASE("parse rejects identifiers outside the alphabet") {
  try {
    parse("x2 + v1", 1);
    FAIL("expected an unknown-identifier error");
  } catch (const UnknownIdentifierError& e) {
    CHECK(e.token() == "x2");
    CHECK(e.offset() == 0);
  }
  CHECK_THROWS_AS(parse("y1", 1), UnknownIdentifierError);
  CHECK_THROWS_AS(parse("x0", 3), UnknownIdentifierError);
  CHECK_THROWS_AS(parse("x01", 3), UnknownIdentifierError);
  CHECK_THROWS_AS(parse("sin", 1), ParseError);
}

TEST_CASE("parse reports syntax errors with byte offsets") {
  try {
    parse("t + * x1", 1);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(parse("(t + 1", 1), ParseError);
  CHECK_THROWS_AS(parse("t t", 1), ParseError);
  CHECK_THROWS_AS(parse("", 1), ParseError);
  CHECK_THROWS_AS(parse("sin(t", 1), ParseError);
}

TEST_CASE("power precedence and associativity") {
  Point p = pt(3.0, {2.0}, {0.0});
  CHECK(evaluate(parse("-x1^2", 1), p) == -4.0);
  CHECK(evaluate(parse("2^3^2", 1), p) == 512.0);
  CHECK(evaluate(parse("2^-1", 1), p) == 0.5);
  CHECK(evaluate(parse("-2^2", 1), p) == -4.0);
  CHECK(evaluate(parse("t - x1 - 1", 1), p) == 0.0);
  CHECK(evaluate(parse("t / x1 / 3", 1), p) == doctest::Approx(0.5));
  CHECK(evaluate(parse("1 + 2*t^2", 1), p) == 19.0);
}

TEST_CASE("evaluate functions and domain errors") {
  Point p = pt(0.5, {4.0}, {-1.0});
  CHECK(evaluate(parse("sqrt(x1) + abs(v1) + exp(0) + ln(1) + cos(0) + sin(0)", 1), p) == 5.0);
  CHECK_THROWS_AS(evaluate(parse("ln(v1)", 1), p), DomainError);
  CHECK_THROWS_AS(evaluate(parse("sqrt(v1)", 1), p), DomainError);
  CHECK_THROWS_AS(evaluate(parse("1/(v1 + 1)", 1), p), DomainError);
  CHECK_THROWS_AS(evaluate(parse("s", 1), p), UnassignedVariableError);
  CHECK_THROWS_AS(evaluate(parse("a1", 1), p), UnassignedVariableError);
}

TEST_CASE("differentiate matches hand-derived results") {
  auto zero = [](const Expr& e) { return is_identically_zero(e, SamplingBox::standard(1, 0.0, 1.0)).zero; };
  CHECK(zero(differentiate(parse("(v1^2 - 1)^2", 1), Var::vel(1)) - parse("4*v1*(v1^2 - 1)", 1)));
  CHECK(zero(differentiate(parse("sin(t*x1)", 1), Var::coord(1)) - parse("t*cos(t*x1)", 1)));
  CHECK(zero(differentiate(parse("x1^t", 1), Var::time()) - parse("ln(x1)*x1^t", 1)));
  CHECK(differentiate(parse("x1*v1", 1), Var::time()).is_constant(0.0));
}

TEST_CASE("total time derivative applies the chain rule") {
  Expr e = parse("t*x1^2 + v1", 1);
  Expr d = total_time_derivative(e, 1);
  Expr want = parse("x1^2 + 2*t*x1*v1 + a1", 1);
  CHECK(is_identically_zero(d - want, SamplingBox::standard(1, 0.0, 1.0)).zero);
  CHECK_THROWS_AS(total_time_derivative(parse("s*x1", 1), 1), PreconditionError);
  CHECK_THROWS_AS(total_time_derivative(parse("a1", 1), 1), PreconditionError);
  Expr ds = total_time_derivative_at_fixed_s(parse("s*x1", 1), 1);
  CHECK(is_identically_zero(ds - parse("s*v1", 1), SamplingBox::standard(1, 0.0, 1.0)).zero);
}

TEST_CASE("property: symbolic derivatives agree with finite differences") {
  Gen gen(101);
  int checked = 0;
  while (checked < 200) {
    int n = gen.integer(1, 2);
    Expr e = gen.smooth(n, 3);
    Var wrt = gen.variable(n);
    Point p = gen.point(n, 1.0);
    Expr d = differentiate(e, wrt);
    double f0 = 0.0;
    double sym = 0.0;
    if (!evaluates(e, p, f0) || !evaluates(d, p, sym)) continue;
    double fd = noether::testing::central_difference([&](const Point& q) { return evaluate(e, q); }, p, wrt);
    INFO(to_string(e), " d/d", wrt.name(), " = ", to_string(d));
    CHECK(std::abs(sym - fd) <= 1e-6 * (1.0 + std::abs(sym)));
    ++checked;
  }
}

TEST_CASE("property: simplify preserves values") {
  Gen gen(202);
  for (int k = 0; k < 200; ++k) {
    int n = gen.integer(1, 2);
    Expr e = gen.smooth(n, 3);
    Expr s = simplify(e);
    for (int j = 0; j < 20; ++j) {
      Point p = gen.point(n, 1.5);
      TracedValue raw;
      try {
        raw = evaluate_traced(e, p);
      } catch (const EvaluationError&) {
        continue;
      }
      double simple = evaluate(s, p);
      INFO(to_string(e), "  ->  ", to_string(s));
      CHECK(std::abs(simple - raw.value) <= 1e-9 * (1.0 + raw.max_magnitude));
    }
  }
}

TEST_CASE("property: simplify is idempotent") {
  Gen gen(303);
  for (int k = 0; k < 200; ++k) {
    Expr once = simplify(gen.smooth(gen.integer(1, 2), 3));
    INFO(to_string(once));
    CHECK(simplify(once) == once);
  }
}

TEST_CASE("property: printing and parsing round-trip") {
  Gen gen(404);
  for (int k = 0; k < 200; ++k) {
    int n = gen.integer(1, 2);
    Expr e = gen.smooth(n, 3);
    Expr back = parse(to_string(e), n);
    INFO(to_string(e));
    for (int j = 0; j < 5; ++j) {
      Point p = gen.point(n, 1.5);
      double want = 0.0;
      if (!evaluates(e, p, want)) continue;
      CHECK(evaluate(back, p) == want);
    }
    Expr s = simplify(e);
    CHECK(simplify(back) == s);
    CHECK(simplify(parse(to_string(s), n)) == s);
  }
}

TEST_CASE("property: polynomial identities reduce syntactically") {
  Gen gen(505);
  for (int k = 0; k < 100; ++k) {
    Expr p = gen.polynomial(2, 3);
    Expr q = gen.polynomial(2, 3);
    Expr lhs = Expr::pow(p + q, Expr(2.0));
    Expr rhs = p * p + Expr(2.0) * p * q + q * q;
    ZeroVerdict v = is_identically_zero(lhs - rhs, SamplingBox::standard(2, 0.0, 1.0));
    INFO(to_string(lhs));
    CHECK(v.zero);
    CHECK(v.syntactic);
  }
}

TEST_CASE("property: differentiation is linear") {
  Gen gen(606);
  for (int k = 0; k < 100; ++k) {
    int n = gen.integer(1, 2);
    Expr f = gen.smooth(n, 2);
    Expr g = gen.smooth(n, 2);
    double alpha = gen.uniform(-2.0, 2.0);
    double beta = gen.uniform(-2.0, 2.0);
    Var wrt = gen.variable(n);
    Expr lhs = differentiate(Expr(alpha) * f + Expr(beta) * g, wrt);
    Expr rhs = Expr(alpha) * differentiate(f, wrt) + Expr(beta) * differentiate(g, wrt);
    CHECK(is_identically_zero(lhs - rhs, SamplingBox::standard(n, -1.0, 1.0)).zero);
  }
}

TEST_CASE("zero test finds witnesses for nonzero expressions") {
  SamplingBox box = SamplingBox::standard(1, 0.0, 1.0);
  ZeroVerdict v = is_identically_zero(parse("sin(t)^2 + cos(t)^2 - 1 + 1e-3*v1", 1), box);
  CHECK_FALSE(v.zero);
  REQUIRE(v.witness);
  CHECK(std::abs(v.witness_value) > 0.0);
  ZeroVerdict trig = is_identically_zero(parse("sin(t)^2 + cos(t)^2 - 1", 1), box);
  CHECK(trig.zero);
  CHECK_FALSE(trig.syntactic);
}

TEST_CASE("zero test is deterministic under a fixed seed") {
  Gen gen(707);
  SamplingBox box = SamplingBox::standard(2, 0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    Expr e = gen.smooth(2, 3) - gen.smooth(2, 2);
    ZeroVerdict first = is_identically_zero(e, box);
    for (int run = 0; run < 2; ++run) {
      ZeroVerdict again = is_identically_zero(e, box);
      CHECK(again.zero == first.zero);
      CHECK(again.max_abs == first.max_abs);
      CHECK(again.witness_value == first.witness_value);
      CHECK(again.witness.has_value() == first.witness.has_value());
      if (first.witness && again.witness) {
        CHECK(again.witness->t == first.witness->t);
        CHECK(again.witness->x == first.witness->x);
        CHECK(again.witness->v == first.witness->v);
      }
    }
  }
}

TEST_CASE("zero test gives up when the box is mostly outside the domain") {
  SamplingBox box = SamplingBox::standard(1, 0.0, 1.0);
  box.x_bound = 1.0;
  CHECK_THROWS_AS(is_identically_zero(parse("ln(-1 - x1^2) - x1", 1), box), RetryCapExceeded);
}

TEST_CASE("substitute and contains") {
  Expr e = parse("t + s*x1", 1);
  CHECK(contains(e, Var::param()));
  Expr at0 = simplify(substitute(e, Var::param(), Expr(0.0)));
  CHECK(at0 == Expr(Var::time()));
  CHECK_FALSE(contains(at0, Var::param()));
  CHECK(contains_kind(parse("a1 + 1", 1), VarKind::Accel));
}

TEST_CASE("printing of common shapes") {
  CHECK(to_string(parse("t*v1 - x1", 1)) == "t*v1 - x1");
  CHECK(to_string(parse("-(v1^2 - 1)*(1 + 3*v1^2)", 1)) == "-(v1^2 - 1)*(1 + 3*v1^2)");
  CHECK(to_string(parse("(-2)^2", 1)) == "(-2)^2");
  CHECK(to_string(simplify(parse("x1 - x1", 1))) == "0");
  CHECK(to_string(parse("0.1", 1)) == "0.1");
}
