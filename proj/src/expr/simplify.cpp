// Normal form: a sum of monomials with real coefficients over "atoms".
// Atoms are the reserved variables plus opaque subterms (function calls,
// real or symbolic powers, non-monomial denominators), each held in normal
// form itself and identified by its printed representation. Collecting like
// monomials gives exact cancellation for polynomial identities.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "noether/expr.hpp"

namespace noether {
namespace {

constexpr std::size_t kMaxTerms = 5000;
constexpr int kMaxIntegerPower = 64;
constexpr int kOpaqueRank = std::numeric_limits<int>::max();

struct Atom {
  int rank = kOpaqueRank;
  std::string key;
  Expr expr;

  static Atom of(Var v) {
    return Atom{static_cast<int>(v.kind) * 1'000'000 + v.index, {}, Expr(v)};
  }
  static Atom opaque(Expr e) {
    std::string key = to_string(e);
    return Atom{kOpaqueRank, std::move(key), std::move(e)};
  }

  friend bool operator<(const Atom& a, const Atom& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.key < b.key;
  }
  friend bool operator==(const Atom& a, const Atom& b) { return a.rank == b.rank && a.key == b.key; }
};

using Monomial = std::vector<std::pair<Atom, int>>;

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i].first < b[i].first) return true;
      if (b[i].first < a[i].first) return false;
      if (a[i].second != b[i].second) return a[i].second > b[i].second;
    }
    return a.size() < b.size();
  }
};

using Poly = std::map<Monomial, double, MonomialLess>;

Poly constant(double c) {
  Poly p;
  if (c != 0.0) p[{}] = c;
  return p;
}

Poly monomial(Atom atom, int exponent, double coefficient = 1.0) {
  Poly p;
  if (exponent == 0) {
    p[{}] = coefficient;
  } else if (coefficient != 0.0) {
    p[{{std::move(atom), exponent}}] = coefficient;
  }
  return p;
}

std::optional<double> as_constant(const Poly& p) {
  if (p.empty()) return 0.0;
  if (p.size() == 1 && p.begin()->first.empty()) return p.begin()->second;
  return std::nullopt;
}

void accumulate(Poly& into, const Monomial& m, double c) {
  auto [it, inserted] = into.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) into.erase(it);
  }
}

Poly add(Poly a, const Poly& b, double scale = 1.0) {
  for (const auto& [m, c] : b) accumulate(a, m, scale * c);
  return a;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      int e = a[i].second + b[j].second;
      if (e != 0) out.emplace_back(a[i].first, e);
      ++i;
      ++j;
    }
  }
  return out;
}

Expr from_poly(const Poly& p);

Poly atomize(const Poly& p) { return monomial(Atom::opaque(from_poly(p)), 1); }

Poly multiply(const Poly& a, const Poly& b) {
  if (a.size() * b.size() > kMaxTerms) {
    // Too large to expand; keep the larger factor as a single opaque symbol.
    return a.size() >= b.size() ? multiply(atomize(a), b) : multiply(a, atomize(b));
  }
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) accumulate(out, multiply(ma, mb), ca * cb);
  }
  return out;
}

bool is_single_monomial(const Poly& p) { return p.size() == 1; }

Poly monomial_power(const Poly& p, int k) {
  const auto& [m, c] = *p.begin();
  double coefficient = std::pow(c, k);
  if (!std::isfinite(coefficient) || coefficient == 0.0) return {};
  Monomial out;
  for (const auto& [atom, e] : m) out.emplace_back(atom, e * k);
  Poly r;
  r[out] = coefficient;
  return r;
}

Poly integer_power(const Poly& base, int k) {
  if (is_single_monomial(base)) {
    Poly r = monomial_power(base, k);
    if (!r.empty()) return r;
  }
  if (k > 0) {
    Poly result = constant(1.0);
    for (int i = 0; i < k; ++i) {
      if (result.size() * base.size() > kMaxTerms) return monomial(Atom::opaque(from_poly(base)), k);
      result = multiply(result, base);
    }
    return result;
  }
  return monomial(Atom::opaque(from_poly(base)), k);
}

std::optional<int> small_integer(double x) {
  if (std::trunc(x) != x || std::abs(x) > kMaxIntegerPower) return std::nullopt;
  return static_cast<int>(x);
}

Poly normalize(const Expr& e);

// Normal form of 1/den, keeping denominator factors unexpanded so that
// printing and re-normalizing is stable.
Poly reciprocal(const Expr& den) {
  switch (den.kind()) {
    case Expr::Kind::Mul: {
      Poly r = constant(1.0);
      for (const Expr& c : den.children()) r = multiply(r, reciprocal(c));
      return r;
    }
    case Expr::Kind::Neg: return add({}, reciprocal(den.child(0)), -1.0);
    case Expr::Kind::Pow: {
      Poly exponent = normalize(den.child(1));
      auto k = as_constant(exponent);
      std::optional<int> ik = k ? small_integer(*k) : std::nullopt;
      if (ik && *ik > 0) {
        Poly base = normalize(den.child(0));
        if (!base.empty()) {
          if (is_single_monomial(base)) {
            Poly r = monomial_power(base, -*ik);
            if (!r.empty()) return r;
          }
          if (!as_constant(base)) return monomial(Atom::opaque(from_poly(base)), -*ik);
        }
      }
      break;
    }
    default: break;
  }
  Poly d = normalize(den);
  if (d.empty()) return monomial(Atom::opaque(Expr::quotient(Expr(1.0), Expr(0.0))), 1);
  if (is_single_monomial(d)) {
    Poly r = monomial_power(d, -1);
    if (!r.empty()) return r;
  }
  return monomial(Atom::opaque(from_poly(d)), -1);
}

double fold_call(Func f, double u, bool& ok) {
  ok = true;
  double r = 0.0;
  switch (f) {
    case Func::Sin: r = std::sin(u); break;
    case Func::Cos: r = std::cos(u); break;
    case Func::Exp: r = std::exp(u); break;
    case Func::Ln: r = u > 0.0 ? std::log(u) : std::numeric_limits<double>::quiet_NaN(); break;
    case Func::Sqrt: r = u >= 0.0 ? std::sqrt(u) : std::numeric_limits<double>::quiet_NaN(); break;
    case Func::Abs: r = std::abs(u); break;
  }
  ok = std::isfinite(r);
  return r;
}

Poly normalize(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Const: return constant(e.value());
    case Expr::Kind::Var: return monomial(Atom::of(e.var()), 1);
    case Expr::Kind::Neg: return add({}, normalize(e.child(0)), -1.0);
    case Expr::Kind::Add: {
      Poly r;
      for (const Expr& c : e.children()) r = add(std::move(r), normalize(c));
      return r;
    }
    case Expr::Kind::Sub: return add(normalize(e.child(0)), normalize(e.child(1)), -1.0);
    case Expr::Kind::Mul: {
      Poly r = constant(1.0);
      for (const Expr& c : e.children()) {
        r = multiply(r, normalize(c));
        if (r.empty()) break;
      }
      return r;
    }
    case Expr::Kind::Div: {
      Poly num = normalize(e.child(0));
      if (num.empty()) return num;
      return multiply(num, reciprocal(e.child(1)));
    }
    case Expr::Kind::Pow: {
      Poly base = normalize(e.child(0));
      Poly exponent = normalize(e.child(1));
      auto k = as_constant(exponent);
      if (k) {
        if (*k == 0.0) return constant(1.0);
        if (auto c = as_constant(base)) {
          double folded = std::pow(*c, *k);
          if (std::isfinite(folded)) return constant(folded);
          return monomial(Atom::opaque(Expr::pow(Expr(*c), Expr(*k))), 1);
        }
        if (auto ik = small_integer(*k)) return integer_power(base, *ik);
        return monomial(Atom::opaque(Expr::pow(from_poly(base), Expr(*k))), 1);
      }
      return monomial(Atom::opaque(Expr::pow(from_poly(base), from_poly(exponent))), 1);
    }
    case Expr::Kind::Call: {
      Poly arg = normalize(e.child(0));
      if (auto c = as_constant(arg)) {
        bool ok = false;
        double folded = fold_call(e.func(), *c, ok);
        if (ok) return constant(folded);
      }
      return monomial(Atom::opaque(Expr::call(e.func(), from_poly(arg))), 1);
    }
  }
  return {};
}

int degree(const Monomial& m) {
  int d = 0;
  for (const auto& [atom, e] : m) d += e;
  return d;
}

Expr term_expr(const Monomial& m, double c) {
  std::vector<Expr> num;
  std::vector<Expr> den;
  for (const auto& [atom, e] : m) {
    if (e > 0) {
      num.push_back(e == 1 ? atom.expr : Expr::pow(atom.expr, Expr(static_cast<double>(e))));
    } else {
      den.push_back(e == -1 ? atom.expr : Expr::pow(atom.expr, Expr(static_cast<double>(-e))));
    }
  }
  if (c != 1.0 || num.empty()) num.insert(num.begin(), Expr(c));
  Expr numerator = Expr::product(std::move(num));
  if (den.empty()) return numerator;
  return Expr::quotient(std::move(numerator), Expr::product(std::move(den)));
}

Expr from_poly(const Poly& p) {
  if (p.empty()) return Expr(0.0);
  std::vector<std::pair<const Monomial*, double>> terms;
  terms.reserve(p.size());
  for (const auto& [m, c] : p) terms.emplace_back(&m, c);
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return degree(*a.first) > degree(*b.first); });
  std::vector<Expr> exprs;
  exprs.reserve(terms.size());
  for (const auto& [m, c] : terms) exprs.push_back(term_expr(*m, c));
  return Expr::sum(std::move(exprs));
}

}  // namespace

Expr simplify(const Expr& e) { return from_poly(normalize(e)); }

}  // namespace noether
