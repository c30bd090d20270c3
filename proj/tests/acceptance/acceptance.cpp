// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "friezekit/reduction.hpp"
#include "friezekit/relations.hpp"
#include "friezekit/rng.hpp"

using namespace friezekit;

namespace {

struct Line {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& why) {
    if (!cond) {
      ok = false;
      detail << " [" << why << "]";
    }
  }
};

std::vector<FamilySpec> relation_families() {
  std::vector<FamilySpec> out;
  for (int N = 4; N <= 9; ++N) out.push_back(FamilySpec::d(N));
  out.push_back(FamilySpec::e6());
  out.push_back(FamilySpec::e7());
  out.push_back(FamilySpec::e8());
  for (int p = 1; p <= 5; ++p)
    for (int q = 1; p + q <= 6; ++q)
      if (std::gcd(p, q) == 1) out.push_back(FamilySpec::a(p, q));
  return out;
}

std::vector<FamilySpec> reduction_families() {
  return {FamilySpec::d(5), FamilySpec::d(7), FamilySpec::d(9), FamilySpec::d(6),
          FamilySpec::e6(), FamilySpec::e7(), FamilySpec::e8()};
}

RunOptions specialized(int trials) {
  RunOptions o;
  o.trials = trials;
  return o;
}

BatteryOptions battery(int trials) {
  BatteryOptions o;
  o.trials = trials;
  return o;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Every report must carry the wanted verdict.
void expect_verdicts(Line& l, const std::vector<CheckReport>& reps, Verdict want) {
  for (const auto& r : reps)
    l.require(r.verdict == want, r.id + " " + to_string(r.verdict) + (r.note.empty() ? "" : ": " + r.note));
}

std::vector<CheckReport> run_group(const FamilySpec& f, const std::string& group, const RunOptions& o) {
  const Registry r = build_registry(f);
  std::vector<Claim> cs;
  for (const auto& c : r.claims)
    if (c.group == group) cs.push_back(c);
  if (cs.empty()) return {};
  return run_claims(r, cs, o);
}

bool has(const std::vector<CheckReport>& reps, const std::string& id) {
  for (const auto& r : reps)
    if (r.id == id) return true;
  return false;
}

Line criterion1() {
  Line l;
  int claims = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& f : relation_families()) {
    const Registry r = build_registry(f);
    for (const auto& rep : run_group(f, "period", specialized(20))) {
      ++claims;
      int period = 0;
      for (const auto& c : r.claims)
        if (c.id == rep.id) period = c.period;
      l.require(rep.verdict == Verdict::Pass, rep.id + " " + to_string(rep.verdict));
      l.require(rep.trials >= 20, rep.id + " trials");
      l.require(rep.n_hi - rep.n_lo + 1 >= 3 * period, rep.id + " window under 3 periods");
    }
  }
  const double t_spec = seconds_since(t0);
  const auto t1 = std::chrono::steady_clock::now();
  int sym = 0;
  for (const auto& f : {FamilySpec::d(4), FamilySpec::d(5), FamilySpec::e6()}) {
    RunOptions o;
    o.mode = Mode::Symbolic;
    o.trials = 1;
    o.max_instances = 1;
    if (f.family == Family::E6) o.n_max = 8;  // K needs a_8
    const Registry r = build_registry(f);
    const auto reps = run_claims(r, select_claims(r, {"period"}), o);
    for (const auto& rep : reps) {
      ++sym;
      l.require(rep.verdict == Verdict::Pass, rep.id + " symbolic " + to_string(rep.verdict));
    }
  }
  const double t_sym = seconds_since(t1);
  l.require(t_sym < 300, "symbolic over 5 min");
  l.detail << claims << " period claims x 20 seeds in " << static_cast<int>(t_spec) << " s; " << sym
           << " symbolic reports (D4, D5, E6) in " << static_cast<int>(t_sym) << " s";
  return l;
}

Line criterion2() {
  Line l;
  int n = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& f : relation_families()) {
    RunOptions o = specialized(20);
    if (f.family == Family::E8) o.n_max = 130;
    const Registry r = build_registry(f);
    const auto reps = run_group(f, "linear", o);
    l.require(reps.size() == r.extending.size() || f.family == Family::A, f.name() + " missing extending vertices");
    l.require(!reps.empty(), f.name() + " no linear claims");
    expect_verdicts(l, reps, Verdict::Pass);
    n += static_cast<int>(reps.size());
  }
  const double t = seconds_since(t0);
  l.require(t < 60, "over 1 min");
  l.detail << n << " extending-vertex relations, E8 depth 130, " << static_cast<int>(t) << " s";
  return l;
}

Line criterion3() {
  Line l;
  int n = 0;
  bool cross = false;
  for (const auto& f : relation_families()) {
    const auto reps = run_group(f, "trace", specialized(20));
    l.require(has(reps, f.name() + ".trace.det") && has(reps, f.name() + ".trace.shift"), f.name() + " missing trace claims");
    expect_verdicts(l, reps, Verdict::Pass);
    cross = cross || has(reps, "E6.trace.cross");
    n += static_cast<int>(reps.size());
  }
  l.require(cross, "E6 cross identity missing");
  l.detail << n << " trace claims incl. E6.trace.cross";
  return l;
}

Line criterion4() {
  Line l;
  std::multiset<int> a_values;
  bool lambda = false;
  for (const auto& f : relation_families()) {
    if (f.family == Family::A) continue;
    const Registry r = build_registry(f);
    for (const auto& row : r.atype_rows)
      if (!row.conjectural) a_values.insert(row.a);
    const auto reps = run_group(f, "atype", specialized(20));
    for (const auto& rep : reps) lambda = lambda || rep.id.find(".atype.lambda.") != std::string::npos;
    expect_verdicts(l, reps, Verdict::Pass);
  }
  std::set<int> distinct(a_values.begin(), a_values.end());
  l.require(distinct == std::set<int>{1, 3, 4, 6, 10}, "a values");
  l.require(lambda, "odd-D lambda variant missing");
  l.detail << "a values {1,3,4,6,10} over D4..D9, E6, E7, E8; odd-D lambda^2 variant";
  return l;
}

Line criterion5() {
  Line l;
  const std::vector<std::pair<FamilySpec, std::vector<std::string>>> want{
      {FamilySpec::e6(),
       {"E6.aux.K-e", "E6.aux.K-g", "E6.aux.J-kernel-form", "E6.aux.Jt-kernel-form", "E6.aux.bdf.b", "E6.aux.bdf.d",
        "E6.aux.bdf.f"}},
      {FamilySpec::e7(), {"E7.aux.J-Jt-shift"}},
      {FamilySpec::e8(), {"E8.aux.J-product-form", "E8.aux.tricky"}}};
  int n = 0;
  for (const auto& [f, ids] : want) {
    const Registry r = build_registry(f);
    std::vector<Claim> cs;
    for (const auto& c : r.claims)
      if (c.group == "auxiliary") cs.push_back(c);
    const auto reps = run_claims(r, cs, specialized(20));
    for (const auto& id : ids) l.require(has(reps, id), "missing " + id);
    expect_verdicts(l, reps, Verdict::Pass);
    n += static_cast<int>(reps.size());
  }
  l.detail << n << " auxiliary identities (E6 K forms and b/d/f, E7 J shift, E8 J form and tricky identity)";
  return l;
}

Line criterion6() {
  Line l;
  for (const auto& f : reduction_families()) {
    const ReducedSystem rs = build_reduction(build_affine_quiver(f));
    l.require(block_identity_holds(rs), f.name() + " block identity");
    l.require(matches_printed_c(rs), f.name() + " C matrix");
    const CheckReport sq = commuting_square_check(rs, battery(20));
    l.require(sq.verdict == Verdict::Pass && sq.trials >= 20, f.name() + " commuting square " + sq.note);
  }
  l.detail << "D5, D7, D9, D6, E6, E7, E8: block identity, printed C, commuting square at 20 points";
  return l;
}

Line criterion7() {
  Line l;
  int n = 0;
  for (const auto& f : reduction_families()) {
    const ReducedSystem rs = build_reduction(build_affine_quiver(f));
    const auto reps = bracket_checks(rs, battery(20));
    l.require(!reps.empty(), f.name() + " no bracket relations");
    expect_verdicts(l, reps, Verdict::Pass);
    n += static_cast<int>(reps.size());
  }
  // Bracket axioms on random monomials.
  const ReducedSystem rs = build_reduction(build_affine_quiver(FamilySpec::e8()));
  Rng rng(7);
  auto mono = [](std::vector<int> a, Rat k) -> NamedFn {
    return {"m", [a = std::move(a), k](const std::vector<DualRat>& y) {
              DualRat r(k);
              for (std::size_t i = 0; i < a.size(); ++i) {
                for (int e = 0; e < a[i]; ++e) r = r * y[i];
                for (int e = 0; e > a[i]; --e) r = r / y[i];
              }
              return r;
            }};
  };
  bool axioms = true;
  for (int t = 0; t < 20; ++t) {
    const auto y = rng.rationals(8);
    std::vector<std::vector<int>> e(3, std::vector<int>(8));
    for (auto& v : e)
      for (auto& x : v) x = static_cast<int>(rng.uniform(-2, 2));
    auto sum = [](const std::vector<int>& a, const std::vector<int>& b) {
      std::vector<int> s(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
      return s;
    };
    const NamedFn f = mono(e[0], 1), g = mono(e[1], 1), h = mono(e[2], 1);
    axioms = axioms && poisson_bracket(rs, f, g, y) == -poisson_bracket(rs, g, f, y);
    axioms = axioms && poisson_bracket(rs, f, mono(sum(e[1], e[2]), 1), y) ==
                           poisson_bracket(rs, f, g, y) * evaluate(h, y) + evaluate(g, y) * poisson_bracket(rs, f, h, y);
    auto inner = [&](const std::vector<int>& a, const std::vector<int>& b) {
      const auto s = sum(a, b);
      return mono(s, poisson_bracket(rs, mono(a, 1), mono(b, 1), y) / evaluate(mono(s, 1), y));
    };
    axioms = axioms && poisson_bracket(rs, f, inner(e[1], e[2]), y) + poisson_bracket(rs, g, inner(e[2], e[0]), y) +
                               poisson_bracket(rs, h, inner(e[0], e[1]), y) ==
                           0;
  }
  l.require(axioms, "bracket axioms");
  l.detail << n << " printed bracket relations at 20 points; antisymmetry, Leibniz, Jacobi on 20 monomial triples";
  return l;
}

Line criterion8() {
  Line l;
  for (const auto& f : {FamilySpec::d(5), FamilySpec::d(7), FamilySpec::d(6), FamilySpec::e6(), FamilySpec::e7(),
                        FamilySpec::e8()}) {
    const ReducedSystem rs = build_reduction(build_affine_quiver(f));
    const auto reps = integrability_battery(rs, battery(10));
    expect_verdicts(l, reps, Verdict::Pass);
    for (const auto& r : reps) l.require(r.trials >= 10, r.id + " trials");
    l.require(static_cast<int>(first_integrals(rs).size()) == rs.m(), f.name() + " integral count");
  }
  const auto m_of = [](const FamilySpec& f) { return build_reduction(build_affine_quiver(f)).m(); };
  l.require(m_of(FamilySpec::e6()) == 3 && m_of(FamilySpec::e7()) == 3 && m_of(FamilySpec::e8()) == 4, "m values");
  l.require(build_reduction(build_affine_quiver(FamilySpec::e8())).dim() == 8, "E8 dimension");
  l.detail << "invariance, involution, rank m, symplectic map at 10 points; m = 3, 3, 4 for E6, E7, E8";
  return l;
}

Line criterion9() {
  Line l;
  for (const auto& f : {FamilySpec::d(4), FamilySpec::e6()}) {
    const CheckReport r = presymplectic_check(build_affine_quiver(f), battery(10));
    l.require(r.verdict == Verdict::Pass && r.trials >= 10, f.name() + " " + r.note);
  }
  l.detail << "D4, E6 at 10 points";
  return l;
}

Line criterion10() {
  Line l;
  for (const auto& [f, id] : {std::pair{FamilySpec::e7(), std::string("E7.conjecture.Ktilde")},
                              std::pair{FamilySpec::e8(), std::string("E8.conjecture.Ktilde")}}) {
    RunOptions o = specialized(50);
    o.max_instances = 20;
    const Registry r = build_registry(f);
    const auto reps = probe_conjecture(r, id, o);
    l.require(reps.size() == 1, id + " not found");
    for (const auto& rep : reps) {
      l.require(rep.verdict == Verdict::Evidence, id + " " + to_string(rep.verdict));
      l.require(!rep.witness_seed, id + " has a counterexample");
      l.require(rep.trials >= 50 && rep.n_hi - rep.n_lo + 1 >= 20, id + " coverage");
    }
  }
  l.detail << "E7 Ktilde form and E8 Ktilde period 2: EVIDENCE, 0 counterexamples, 50 seeds, 20 n each (not a proof)";
  return l;
}

Line criterion11() {
  Line l;
  for (const auto& f : reduction_families()) {
    const ReducedSystem rs = build_reduction(build_affine_quiver(f));
    const CheckReport r = generic_step_check(rs, battery(50));
    l.require(r.verdict == Verdict::Pass && r.trials >= 50, f.name() + " " + r.note);
  }
  l.detail << "lift-step-project equals the explicit map at 50 points for 7 families";
  return l;
}

Line criterion12() {
  Line l;
  std::ostringstream pos;
  for (const auto& f : {FamilySpec::d(4), FamilySpec::d(5), FamilySpec::e6()}) {
    try {
      const auto t = frieze_symbolic(build_affine_quiver(f), 6);
      std::size_t terms = 0, negative = 0;
      for (const auto& col : t.columns)
        for (const auto& p : col)
          for (const auto& term : p.terms()) {
            ++terms;
            if (term.coeff < 0) ++negative;
          }
      pos << " " << f.name() << ": " << terms << " terms, " << (negative == 0 ? "all positive" : "NOT all positive");
    } catch (const DivisionNotExact& e) {
      l.require(false, f.name() + " DivisionNotExact: " + e.what());
    }
  }
  l.detail << "depth 6, no inexact division;" << pos.str();
  return l;
}

}  // namespace

int main() {
  const std::vector<std::function<Line()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                    criterion5, criterion6, criterion7, criterion8,
                                                    criterion9, criterion10, criterion11, criterion12};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Line l;
    try {
      l = criteria[k]();
    } catch (const std::exception& e) {
      l.ok = false;
      l.detail << "exception: " << e.what();
    }
    if (!l.ok) ++failed;
    std::printf("criterion %2zu: %s  %s\n", k + 1, l.ok ? "PASS" : "FAIL", l.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
