// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "noether/classifier.hpp"
#include "noether/cli.hpp"
#include "noether/problem.hpp"

using namespace noether;
using noether::testing::Gen;

namespace {

using Sources = std::vector<std::vector<std::string>>;

struct Criterion {
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

void counterexample(Criterion& c) {
  Problem p = build_problem(load_problem(default_corpus_dir() / "counterexample.json"));
  AnalysisConfig cfg = make_config(p.file.config);
  const PiecewiseTrajectory* zig = p.find_trajectory("zigzag");
  const PiecewiseTrajectory* plat = p.find_trajectory("plateau");
  const PiecewiseTrajectory* rest = p.find_trajectory("rest");
  c.require(zig && plat && rest, "corpus lacks zigzag, plateau or rest");
  if (!zig || !plat || !rest) return;

  AnalysisReport z = analyze(p.system, p.family, *zig, cfg);
  c.require(z.invariance.invariant, "(a) time translation not invariant");

  Expr eq8 = parse("(v1^2 - 1)*(1 + 3*v1^2)", 1);
  SamplingBox box = p.system.default_box();
  bool minus = is_identically_zero(z.noether + eq8, box).zero;
  bool plus = is_identically_zero(z.noether - eq8, box).zero;
  c.require(minus || plus, "(b) conserved quantity is " + to_string(z.noether));

  c.require(z.euler_lagrange.passed(), "(c) zigzag EL fails");
  c.require(z.dubois_reymond.passed(), "(c) zigzag DBR fails");
  c.require(z.conservation.deviation <= 1e-9, "(c) zigzag deviation " + num(z.conservation.deviation));

  AnalysisReport q = analyze(p.system, p.family, *plat, cfg);
  c.require(q.euler_lagrange.passed() && q.euler_lagrange.residual <= 1e-9,
            "(d) plateau EL residual " + num(q.euler_lagrange.residual));
  c.require(!q.dubois_reymond.passed() && near(q.dubois_reymond.residual, 1.0, 1e-9),
            "(d) plateau DBR residual " + num(q.dubois_reymond.residual));
  c.require(near(q.conservation.deviation, 1.0, 1e-9), "(d) plateau deviation " + num(q.conservation.deviation));
  bool w_ok = !q.weierstrass.passed() && q.weierstrass.witness && near(q.weierstrass.witness->excess, -1.0, 1e-9) &&
              q.weierstrass.witness->probe.size() == 1 && near(std::abs(q.weierstrass.witness->probe[0]), 1.0, 1e-9);
  c.require(w_ok, "(d) plateau Weierstrass witness missing or wrong");

  AnalysisReport r = analyze(p.system, p.family, *rest, cfg);
  c.require(r.euler_lagrange.passed() && r.dubois_reymond.passed() && r.conservation.conserved,
            "(e) rest is not an EL, DBR, conserved case");
}

void reduction(Criterion& c) {
  int families = 0;
  for (const auto& path : corpus_files(default_corpus_dir())) {
    Problem p = build_problem(load_problem(path));
    if (!p.family.gauge_free() || !p.family.velocity_free()) continue;
    ++families;
    Expr general = noether_quantity(p.system, p.family);
    Expr classical = classical_noether_quantity(p.system, p.family);
    c.require(general == classical, p.file.name + ": " + to_string(general) + " vs " + to_string(classical));
    ZeroVerdict v = is_identically_zero(general - classical, p.system.default_box());
    c.require(v.zero && v.syntactic, p.file.name + ": difference is not a syntactic zero");
  }
  c.require(families >= 5, "too few gauge-free velocity-free families: " + std::to_string(families));
}

void conservation(Criterion& c) {
  Interval iv{0.0, 3.0};
  LagrangianSystem free = build_system(1, iv, "v1^2/2");
  std::vector<std::string> same{"x1"};
  std::vector<std::string> shifted{"x1 + s"};
  std::vector<std::string> boosted{"x1 + s*t"};
  std::vector<std::pair<const char*, TransformationFamily>> families{
      {"energy", build_family(free, "t + s", same)},
      {"momentum", build_family(free, "t", shifted)},
      {"boost", build_family(free, "t", boosted, "x1")},
  };
  std::vector<Expr> quantities;
  for (const auto& [name, fam] : families) quantities.push_back(noether_quantity(free, fam));

  Gen gen(20030101);
  auto away_from_zero = [&] { return (gen.integer(0, 1) ? 1.0 : -1.0) * gen.uniform(0.1, 2.0); };
  for (int k = 0; k < 20; ++k) {
    double x0 = away_from_zero();
    double v0 = away_from_zero();
    Expr line = Expr(x0) + Expr(v0) * Expr(Var::time());
    PiecewiseTrajectory traj = build_trajectory(1, iv, {iv.a, iv.b}, std::vector<std::vector<Expr>>{{line}});
    for (std::size_t f = 0; f < families.size(); ++f) {
      ConservationResult r = verify_conservation(quantities[f], traj, {});
      c.require(r.deviation <= 1e-8 * r.scale, std::string(families[f].first) + " along x0=" + num(x0) +
                                                   " v0=" + num(v0) + " deviation " + num(r.deviation));
    }
  }

  double tau = 2.0 * std::numbers::pi;
  Interval period{0.0, tau};
  LagrangianSystem osc = build_system(1, period, "(v1^2 - x1^2)/2");
  Expr energy = noether_quantity(osc, build_family(osc, "t + s", same));
  c.require(is_identically_zero(energy + parse("(v1^2 + x1^2)/2", 1), osc.default_box()).zero,
            "oscillator quantity is " + to_string(energy));
  PiecewiseTrajectory sine = build_trajectory(1, period, {0.0, tau}, Sources{{"sin(t)"}});
  ConservationResult r = verify_conservation(energy, sine, {});
  c.require(r.deviation <= 1e-6, "oscillator deviation " + num(r.deviation));
}

void corpus_assertion(Criterion& c) {
  int cases = 0;
  for (const auto& path : corpus_files(default_corpus_dir())) {
    Problem p = build_problem(load_problem(path));
    AnalysisConfig cfg = make_config(p.file.config);
    for (const auto& [name, traj] : p.trajectories) {
      AnalysisReport r = analyze(p.system, p.family, traj, cfg);
      ++cases;
      bool hypotheses = r.invariance.invariant && r.euler_lagrange.passed() && r.dubois_reymond.passed();
      c.require(!hypotheses || r.conservation.deviation <= 1e-6 * r.conservation.scale,
                p.file.name + "/" + name + ": deviation " + num(r.conservation.deviation));
      c.require(!r.finding, p.file.name + "/" + name + ": " + r.finding.value_or(""));
    }
  }
  c.require(cases >= 10, "corpus has only " + std::to_string(cases) + " cases");
}

void smooth_implication(Criterion& c) {
  Interval iv{0.0, 2.0};
  LagrangianSystem free = build_system(1, iv, "v1^2/2");
  Gen gen(5);
  Expr t(Var::time());
  int dbr_pass = 0;
  int el_fail = 0;
  for (int k = 0; k < 50; ++k) {
    // Random quartic with the curvature terms dropped, which leaves the extremal line.
    std::vector<double> coef(5);
    for (double& a : coef) a = gen.uniform(-2.0, 2.0);
    Expr line = Expr(coef[0]) + Expr(coef[1]) * t;
    PiecewiseTrajectory extremal = build_trajectory(1, iv, {iv.a, iv.b}, std::vector<std::vector<Expr>>{{line}});
    if (check_euler_lagrange(free, extremal, {}, 1e-9).passed() &&
        check_dubois_reymond(free, extremal, {}, 1e-9).passed()) {
      ++dbr_pass;
    }

    double bump = (gen.integer(0, 1) ? 1.0 : -1.0) * gen.uniform(0.05, 1.0);
    Expr perturbed = line + Expr(bump) * t * t + Expr(coef[3]) * Expr::pow(t, Expr(3.0)) +
                     Expr(coef[4]) * Expr::pow(t, Expr(4.0));
    PiecewiseTrajectory other = build_trajectory(1, iv, {iv.a, iv.b}, std::vector<std::vector<Expr>>{{perturbed}});
    if (!check_euler_lagrange(free, other, {}, 1e-6).passed()) ++el_fail;
  }
  c.require(dbr_pass == 50, "DBR passed on " + std::to_string(dbr_pass) + "/50 extremals");
  c.require(el_fail == 50, "EL failed on " + std::to_string(el_fail) + "/50 perturbations");
}

void kernels(Criterion& c) {
  Gen gen(6);
  int checked = 0;
  int bad = 0;
  while (checked < 200) {
    int n = gen.integer(1, 2);
    Expr e = gen.smooth(n, 3);
    Var wrt = gen.variable(n);
    Point p = gen.point(n, 1.0);
    double sym = 0.0;
    try {
      evaluate(e, p);
      sym = evaluate(differentiate(e, wrt), p);
    } catch (const EvaluationError&) {
      continue;
    }
    double fd = noether::testing::central_difference([&](const Point& q) { return evaluate(e, q); }, p, wrt);
    if (std::abs(sym - fd) > 1e-6 * (1.0 + std::abs(sym))) ++bad;
    ++checked;
  }
  c.require(bad == 0, std::to_string(bad) + "/200 derivative triples disagree with finite differences");

  PiecewiseTrajectory unit = build_trajectory(1, {0.0, 1.0}, {0.0, 1.0}, Sources{{"t"}});
  PiecewiseTrajectory wide = build_trajectory(1, {-1.0, 2.0}, {-1.0, 0.5, 2.0}, Sources{{"t"}, {"t"}});
  for (const auto* traj : {&unit, &wide}) {
    double a = traj->interval().a;
    double b = traj->interval().b;
    for (int k = 0; k <= 40; ++k) {
      double want = (std::pow(b, k + 1) - std::pow(a, k + 1)) / (k + 1);
      double got = quadrature_along(*traj, Expr::pow(Expr(Var::time()), Expr(static_cast<double>(k))));
      c.require(std::abs(got - want) <= 1e-10 * std::abs(want),
                "monomial degree " + std::to_string(k) + " gives " + num(got) + " vs " + num(want));
    }
  }

  SamplingBox box = SamplingBox::standard(2, 0.0, 1.0);
  for (int k = 0; k < 30; ++k) {
    Expr e = gen.smooth(2, 3) - gen.smooth(2, 3);
    ZeroVerdict first = is_identically_zero(e, box);
    for (int r = 0; r < 2; ++r) {
      ZeroVerdict again = is_identically_zero(e, box);
      bool same = again.zero == first.zero && again.max_abs == first.max_abs &&
                  again.witness_value == first.witness_value && again.witness.has_value() == first.witness.has_value();
      c.require(same, "zero test verdict changed between runs for " + to_string(e));
    }
  }
}

void negative_control(Criterion& c) {
  Problem p = build_problem(load_problem(default_corpus_dir() / "dilation.json"));
  InvarianceVerdict v = check_quasi_invariance(p.system, p.family, p.system.default_box());
  c.require(!v.invariant, "dilation reported invariant");
  bool finite = v.witness && std::isfinite(v.witness->t) && std::isfinite(v.witness_value);
  if (v.witness) {
    for (double x : v.witness->x) finite = finite && std::isfinite(x);
    for (double x : v.witness->v) finite = finite && std::isfinite(x);
  }
  c.require(finite, "dilation witness missing or not finite");
  std::ostringstream out, err;
  int code = run_cli({"invariance", (default_corpus_dir() / "dilation.json").string()}, out, err);
  c.require(code == 2, "invariance subcommand exited with " + std::to_string(code));
}

}  // namespace

int main() {
  struct Entry {
    const char* id;
    const char* title;
    double budget_seconds;
    std::function<void(Criterion&)> body;
  };
  std::vector<Entry> entries{
      {"AC1", "double-well counterexample reproduction", 1.0, counterexample},
      {"AC2", "classical quantity reduction on bundled families", 1.0, reduction},
      {"AC3", "conservation along free-particle lines and the oscillator", 5.0, conservation},
      {"AC4", "no invariant EL and DBR corpus case breaks conservation", 0.0, corpus_assertion},
      {"AC5", "smooth extremals pass DBR and perturbations fail EL", 0.0, smooth_implication},
      {"AC6", "derivative, quadrature and zero-test kernels", 0.0, kernels},
      {"AC7", "dilation is not invariant and exits with code 2", 0.0, negative_control},
  };

  int failed = 0;
  for (const auto& e : entries) {
    Criterion c;
    auto start = std::chrono::steady_clock::now();
    try {
      e.body(c);
    } catch (const std::exception& ex) {
      c.failures.push_back(std::string("exception: ") + ex.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (e.budget_seconds > 0.0 && seconds >= e.budget_seconds) {
      c.failures.push_back("took " + num(seconds) + " s, budget " + num(e.budget_seconds) + " s");
    }
    bool ok = c.failures.empty();
    std::printf("%s %s  %s  (%.3f s)\n", ok ? "PASS" : "FAIL", e.id, e.title, seconds);
    for (const auto& f : c.failures) std::printf("     %s\n", f.c_str());
    if (!ok) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(entries.size()) - failed, entries.size());
  return failed == 0 ? 0 : 1;
}
