#include <numeric>

#include "friezekit/errors.hpp"
#include "friezekit/relations.hpp"

namespace friezekit {

namespace {

Expr X(int v, int o) { return Expr::var(v, o); }
Expr C(long c) { return Expr::constant(Rat(c)); }

class Builder {
 public:
  explicit Builder(Registry& r) : r_(r) {}

  std::string id(const std::string& rest) const { return r_.family.name() + "." + rest; }

  void quantity(const std::string& symbol, Expr e, int period, const std::string& citation, bool conj = false,
                const std::string& note = "") {
    r_.quantities.push_back({id(symbol), r_.family, symbol, e, period, conj, citation});
    Claim c;
    c.id = conj ? id("conjecture." + symbol) : id(symbol + ".period");
    c.group = conj ? "conjecture" : "period";
    c.kind = ClaimKind::Period;
    c.lhs = std::move(e);
    c.period = period;
    c.conjectural = conj;
    c.citation = citation;
    c.note = note;
    r_.claims.push_back(std::move(c));
  }

  void identity(const std::string& rest, const std::string& group, Expr lhs, Expr rhs, const std::string& citation,
                bool conj = false, const std::string& note = "") {
    Claim c;
    c.id = id(rest);
    c.group = group;
    c.kind = ClaimKind::Identity;
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    c.conjectural = conj;
    c.citation = citation;
    c.note = note;
    r_.claims.push_back(std::move(c));
  }

  void period(const std::string& rest, const std::string& group, Expr e, int p, const std::string& citation,
              bool conj = false) {
    Claim c;
    c.id = id(rest);
    c.group = group;
    c.kind = ClaimKind::Period;
    c.lhs = std::move(e);
    c.period = p;
    c.conjectural = conj;
    c.citation = citation;
    r_.claims.push_back(std::move(c));
  }

  void trace(const std::string& what) {
    for (auto [kind, name, cite] :
         {std::tuple{ClaimKind::PsiStep, "trace.psi", "Psi_n times the periodic factors L equals Psi shifted by m"},
          std::tuple{ClaimKind::TraceDet, "trace.det", "det(M_n) = 1 for the monodromy product"},
          std::tuple{ClaimKind::TraceShift, "trace.shift", "K = trace(M_n) is invariant under the shift"}}) {
      Claim c;
      c.id = id(name);
      c.group = "trace";
      c.kind = kind;
      c.citation = std::string(cite) + " (" + what + ")";
      r_.claims.push_back(std::move(c));
    }
  }

  // X^k_{n+2b} - K X^k_{n+b} + X^k_n = 0 at every extending vertex.
  void linear_relations() {
    for (int k : r_.extending) {
      Expr rel = X(k, 2 * r_.b) - Expr::kappa() * X(k, r_.b) + X(k, 0);
      identity("linear." + r_.labels[static_cast<std::size_t>(k)], "linear", rel, C(0),
               "constant coefficient linear relation with step b = " + std::to_string(r_.b) +
                   " at an extending vertex");
    }
  }

  // gamma_n = X_{n+a+p} X_n - X_{n+a} X_{n+p} has period a.
  void atype(const ATypeRow& row, const std::vector<int>& vertices) {
    r_.atype_rows.push_back(row);
    for (int k : vertices) {
      Expr g = X(k, row.a + row.p) * X(k, 0) - X(k, row.a) * X(k, row.p);
      std::string tag = "atype." + std::to_string(row.a) + "-" + std::to_string(row.p) + "." +
                        r_.labels[static_cast<std::size_t>(k)];
      period(row.conjectural ? "conjecture." + tag : tag, row.conjectural ? "conjecture" : "atype", g, row.a,
             "A-type recurrence with (a, p) = (" + std::to_string(row.a) + ", " + std::to_string(row.p) +
                 "): gamma has period a",
             row.conjectural);
    }
  }

  // Row r of a kernel matrix annihilates (1, -alpha, 1).
  void kernel_row(const std::string& tag, Expr x0, Expr x1, Expr x2, const Expr& alpha, const std::string& cite) {
    identity("kernel." + tag, "kernel", x0 - alpha * x1 + x2, C(0), cite);
  }

 private:
  Registry& r_;
};

Mat2Expr mat(Expr a, Expr b, Expr c, Expr d) { return Mat2Expr{{std::move(a), std::move(b), std::move(c), std::move(d)}}; }

std::vector<int> range(int lo, int hi, int step = 1) {
  std::vector<int> v;
  for (int i = lo; i < hi; i += step) v.push_back(i);
  return v;
}

void build_a(Registry& r) {
  const int p = r.family.p, q = r.family.q;
  const int m = std::lcm(p, q);
  r.labels = {"x"};
  r.extending = {0};
  r.b = m;
  Builder bld(r);
  const Expr x0 = X(0, 0);
  Expr J = (X(0, 2 * q) + x0) / X(0, q);
  Expr Jt = (X(0, 2 * p) + x0) / X(0, p);
  bld.quantity("J", J, p, "J_n = (x_{n+2q} + x_n)/x_{n+q} has period p");
  bld.quantity("Jt", Jt, q, "Jt_n = (x_{n+2p} + x_n)/x_{n+p} has period q");
  r.psi.psi = mat(X(0, 0), X(0, q), X(0, p), X(0, p + q));
  r.psi.l = mat(C(0), C(-1), C(1), J);
  r.psi.factor_offsets = range(0, m, q);
  r.psi.shift = m;
  r.psi.trace_offsets = range(0, m, q);
  bld.trace("L_n = [[0,-1],[1,J_n]]");
  bld.linear_relations();
  bld.identity("aux.J-relation", "auxiliary", X(0, 2 * q) - J * X(0, q) + x0, C(0),
               "x_{n+2q} - J_n x_{n+q} + x_n = 0 (periodic coefficients)");
  bld.identity("aux.Jt-relation", "auxiliary", X(0, 2 * p) - Jt * X(0, p) + x0, C(0),
               "x_{n+2p} - Jt_n x_{n+p} + x_n = 0 (periodic coefficients)");
  bld.identity("aux.recurrence", "auxiliary", X(0, p + q) * x0, X(0, p) * X(0, q) + 1,
               "x_{n+p+q} x_n = x_{n+p} x_{n+q} + 1");
  Claim c;
  c.id = bld.id("frieze.sequence");
  c.group = "structure";
  c.kind = ClaimKind::SequenceMatch;
  c.citation = "the sink-first frieze of the A(p,q) quiver is the single recurrence, X^k_n = x_{n(p+q)+k}";
  r.claims.push_back(std::move(c));
}

void build_d(Registry& r) {
  const int N = r.family.N;
  const bool odd = N % 2 == 1;
  for (int k = 1; k <= N + 1; ++k) r.labels.push_back("X" + std::to_string(k));
  auto V = [](int k) { return k - 1; };  // 1-based label k -> grid index
  auto x = [&](int k, int o) { return X(V(k), o); };
  r.extending = {V(1), V(2), V(N), V(N + 1)};
  const int m = odd ? 2 * N - 4 : N - 2;
  r.b = m;
  Builder bld(r);

  Expr J = (x(1, 1) + x(1, -1)) / x(2, 0);
  bld.quantity("J", J, N - 2, "J_n = (X^1_{n+1} + X^1_{n-1})/X^2_n has period N-2");
  bld.quantity("X1/X2", x(1, 0) / x(2, 0), 2, "X^1_n/X^2_n has period 2");
  bld.quantity("XN/XN+1", x(N, 0) / x(N + 1, 0), 2, "X^N_n/X^{N+1}_n has period 2");

  r.psi.psi = mat(x(1, 0), x(2, 1), x(1, N - 2), x(2, N - 1));
  r.psi.l = mat(C(0), C(-1), C(1), J.shifted(1));
  r.psi.factor_offsets = range(0, m);
  r.psi.shift = m;
  r.psi.trace_offsets = range(0, m);
  bld.trace("L_n = [[0,-1],[1,J_{n+1}]]");
  bld.linear_relations();

  if (odd) {
    bld.atype({1, 2 * N - 4, false}, r.extending);
    // Odd N: X^k_{n+N-1} X^k_n = lambda_{n+1}^2 X^k_{n+N-2} X^k_{n+1} + gamma_n,
    // lambda_{n+1} = X^k_n / X^l_n with l the partner extending vertex.
    const std::pair<int, int> pairs[] = {{1, 2}, {2, 1}, {N, N + 1}, {N + 1, N}};
    for (auto [k, l] : pairs) {
      Expr lam = x(k, 0) / x(l, 0);
      Expr g = x(k, N - 1) * x(k, 0) - lam * lam * x(k, N - 2) * x(k, 1);
      bld.period("atype.lambda." + r.labels[static_cast<std::size_t>(V(k))], "atype", g, 2,
                 "odd D A-type recurrence with lambda^2 factor: gamma and lambda have period 2");
    }
  } else {
    bld.atype({1, N - 2, false}, r.extending);
  }

  // Alternative forms of J from the kernel-vector construction.
  if (N == 4) {
    bld.identity("aux.J-kernel-form", "auxiliary", J, (x(1, 1) * x(2, 1) + x(4, 0) * x(5, 0)) / x(3, 1),
                 "J_n = (X^1_{n+1} X^2_{n+1} + X^4_n X^5_n)/X^3_{n+1} for N = 4");
    bld.identity("aux.J-kernel-form-back", "auxiliary", J, (x(1, -1) * x(2, -1) + x(4, 0) * x(5, 0)) / x(3, 0),
                 "J_n = (X^1_{n-1} X^2_{n-1} + X^4_n X^5_n)/X^3_n for N = 4");
  } else {
    bld.identity("aux.J-kernel-form", "auxiliary", J, (x(1, 1) * x(2, 1) + x(4, 0)) / x(3, 1),
                 "J_n = (X^1_{n+1} X^2_{n+1} + X^4_n)/X^3_{n+1}");
    bld.identity("aux.J-kernel-form-back", "auxiliary", J, (x(1, -1) * x(2, -1) + x(4, 0)) / x(3, 0),
                 "J_n = (X^1_{n-1} X^2_{n-1} + X^4_n)/X^3_n");
    const std::string cite = "row of the D kernel matrix annihilates (1, -J_n, 1)";
    bld.kernel_row("top0", x(4, 0), x(3, 0), x(1, -1) * x(2, -1), J, cite);
    bld.kernel_row("top1", x(1, 1), x(2, 0), x(1, -1), J, cite);
    bld.kernel_row("row0", x(1, 1) * x(2, 1), x(3, 1), x(4, 0), J, cite);
    Expr r1_last = N == 5 ? x(5, 1) * x(6, 1) : x(5, 1);
    bld.kernel_row("row1", x(3, 2), x(4, 1), r1_last, J, cite);
    if (N >= 6) {
      Expr r2_last = N == 6 ? x(6, 1) * x(7, 1) : x(6, 1);
      bld.kernel_row("row2", x(4, 2), x(5, 2), r2_last, J, cite);
    }
  }
}

void build_e6(Registry& r) {
  r.labels = {"a", "b", "c", "d", "e", "f", "g"};
  enum { a, b, c, d, e, f, g };
  r.extending = {a, e, g};
  r.b = 6;
  Builder bld(r);
  Expr J = (X(a, 0) + X(g, 4)) / X(e, 2);
  Expr Jt = (X(a, 0) + X(g, -4)) / X(e, -2);
  Expr K = (X(a, -3) + X(a, 3)) / X(a, 0);
  bld.quantity("J", J, 3, "J_n = (a_n + g_{n+4})/e_{n+2} has period 3");
  bld.quantity("Jt", Jt, 3, "Jt_n = (a_n + g_{n-4})/e_{n-2} has period 3");
  bld.quantity("K", K, 2, "K_n = (a_{n-3} + a_{n+3})/a_n has period 2");

  r.psi.psi = mat(X(e, 5), X(a, 3), X(e, 2), X(a, 0));
  r.psi.l = mat(J, C(1), C(-1), C(0));
  r.psi.factor_offsets = {0, 1, 2};
  r.psi.shift = 6;
  r.psi.trace_offsets = {0, 2, 4};
  bld.trace("L_n = [[J_n,1],[-1,0]], K = tr(L_n L_{n+2} L_{n+4})");
  bld.identity("trace.cross", "trace", Expr::kappa(), K * K.shifted(1) - 2, "K = K_n K_{n+1} - 2");
  bld.linear_relations();
  bld.atype({3, 2, false}, {a, e, g});

  bld.identity("aux.K-e", "auxiliary", K, (X(e, -3) + X(e, 3)) / X(e, 0),
               "(a_{n-3} + a_{n+3})/a_n = (e_{n-3} + e_{n+3})/e_n");
  bld.identity("aux.K-g", "auxiliary", K, (X(g, -3) + X(g, 3)) / X(g, 0),
               "(a_{n-3} + a_{n+3})/a_n = (g_{n-3} + g_{n+3})/g_n");
  for (int v : {b, d, f}) {
    Expr k1 = Expr::kappa() + 1;
    Expr rel = X(v, 0) - k1 * X(v, 3) + k1 * X(v, 6) - X(v, 9);
    bld.identity("aux.bdf." + r.labels[static_cast<std::size_t>(v)], "auxiliary", rel, C(0),
                 "x_n - (K+1) x_{n+3} + (K+1) x_{n+6} - x_{n+9} = 0 at b, d, f");
  }
  bld.identity("aux.J-kernel-form", "auxiliary", J, (X(f, 1) + X(e, 3) * X(g, 4)) / X(d, 2),
               "J_n = (f_{n+1} + e_{n+3} g_{n+4})/d_{n+2}");
  bld.identity("aux.Jt-kernel-form", "auxiliary", Jt, (X(f, -2) + X(e, -3) * X(g, -4)) / X(d, -3),
               "Jt_n = (f_{n-2} + e_{n-3} g_{n-4})/d_{n-3}");

  const Expr alpha = X(a, 0);
  const std::string cite = "row of the E6 kernel matrix annihilates (1, -a_n, 1)";
  bld.kernel_row("row-4", X(g, -4) / X(f, -2), X(d, -3) / X(f, -2), X(e, -2), alpha, cite);
  bld.kernel_row("row-3", X(b, -3), X(c, -2), X(d, -2) * X(f, -2), alpha, cite);
  bld.kernel_row("row-2", X(a, -2), X(b, -2), X(c, -1), alpha, cite);
  bld.kernel_row("row-1", C(1), X(a, -1), X(b, -1), alpha, cite);
  bld.kernel_row("row0", X(a, 0), C(1), C(0), alpha, cite);
  bld.kernel_row("row1", X(b, 0), X(a, 1), C(1), alpha, cite);
  bld.kernel_row("row2", X(c, 1), X(b, 1), X(a, 2), alpha, cite);
  bld.kernel_row("row3", X(d, 1) * X(f, 1), X(c, 2), X(b, 2), alpha, cite);
  bld.kernel_row("row4", X(e, 2), X(d, 2) / X(f, 1), X(g, 4) / X(f, 1), alpha, cite);
}

void build_e7(Registry& r) {
  r.labels = {"a", "b", "c", "d", "e", "f", "g", "h"};
  enum { a, b, c, d, e, f, g, h };
  r.extending = {a, h};
  r.b = 12;
  Builder bld(r);
  Expr J = (X(a, 6) + X(a, 0)) / X(h, 3);
  Expr K = (X(a, 8) + X(a, 0)) / X(a, 4);
  Expr Kt = X(a, 0) * X(h, 7) - X(h, 3) * X(a, 4);
  bld.quantity("J", J, 4, "J_n = (a_{n+6} + a_n)/h_{n+3} has period 4");
  bld.quantity("K", K, 3, "K_n = (a_{n+8} + a_n)/a_{n+4} has period 3");
  bld.quantity("Ktilde", Kt, 2, "Kt_n = a_n h_{n+7} - h_{n+3} a_{n+4} has period 2", false,
               "proof not given in the source (externally unproven); verified here by exact checks only");

  r.psi.psi = mat(X(a, 5), X(h, 2), X(h, 3), X(a, 0));
  r.psi.l = mat(J, C(1), C(-1), C(0));
  r.psi.factor_offsets = {0, 1};
  r.psi.shift = 6;
  r.psi.trace_offsets = {2, 3, 8, 9};
  bld.trace("L_n = [[J_n,1],[-1,0]], K = tr(L_{n+2} L_{n+3} L_{n+8} L_{n+9})");
  bld.linear_relations();
  bld.atype({4, 3, false}, {a, h});

  Expr Jm = (X(e, 2) + X(a, 6) * X(h, 4)) / X(g, 3);
  Expr Jtm = (X(e, -2) + X(a, -6) * X(h, -4)) / X(g, -4);
  bld.identity("aux.J-forms", "auxiliary", Jm, J, "(e_{n+2} + a_{n+6} h_{n+4})/g_{n+3} = (a_{n+6} + a_n)/h_{n+3}");
  bld.identity("aux.J-Jt-shift", "auxiliary", Jm, Jtm.shifted(6), "J_n = Jt_{n+6}");
  bld.identity("aux.J-h-form", "auxiliary", J, (X(h, 8) + X(h, 2)) / X(a, 5),
               "(a_{n+6} + a_n)/h_{n+3} = (h_{n+8} + h_{n+2})/a_{n+5}");
  bld.identity("aux.J-product-form", "auxiliary", Jm, X(a, 0) * X(h, 4) - X(e, 2), "J_n = a_n h_{n+4} - e_{n+2}");
  bld.identity("aux.K-h-form", "auxiliary", K, (X(h, 8) + X(h, 0)) / X(h, 4),
               "(a_{n+8} + a_n)/a_{n+4} = (h_{n+8} + h_n)/h_{n+4}");
  bld.identity("conjecture.Ktilde", "conjecture", Kt, (X(a, 12) + X(a, 0)) / X(h, 6),
               "conjectured: Kt_n = (a_{n+12} + a_n)/h_{n+6}", true, "evidence only, not a proof");
}

void build_e8(Registry& r) {
  r.labels = {"a", "b", "c", "d", "e", "f", "g", "h", "i"};
  enum { a, b, c, d, e, f, g, h, i };
  r.extending = {a};
  r.b = 30;
  Builder bld(r);
  // J_{n+3} = (a_{n+12} + a_n)/a_{n+6}, i.e. J_n = (a_{n+9} + a_{n-3})/a_{n+3}.
  Expr J = (X(a, 9) + X(a, -3)) / X(a, 3);
  Expr K = (X(a, 20) + X(a, 0)) / X(a, 10);
  Expr Kt = (X(a, 30) + X(a, 0)) / X(a, 15);
  bld.quantity("J", J, 5, "J_n = (a_{n+9} + a_{n-3})/a_{n+3} has period 5");
  bld.quantity("K", K, 3, "K_n = (a_{n+20} + a_n)/a_{n+10} has period 3");
  bld.quantity("Ktilde", Kt, 2, "conjectured: Kt_n = (a_{n+30} + a_n)/a_{n+15} has period 2", true);

  r.psi.psi = mat(X(a, 11), X(a, 5), X(a, 6), X(a, 0));
  r.psi.l = mat(J.shifted(3), C(1), C(-1), C(0));
  r.psi.factor_offsets = {0, 6, 12, 18, 24};
  r.psi.shift = 30;
  r.psi.trace_offsets = {0, 6, 12, 18, 24};
  bld.trace("L_n = [[J_{n+3},1],[-1,0]], K = tr(L_n L_{n+6} ... L_{n+24})");
  bld.linear_relations();
  bld.atype({6, 5, false}, {a});
  bld.atype({10, 3, false}, {a});
  bld.atype({15, 2, true}, {a});

  bld.identity("aux.J-forms", "auxiliary", (X(g, 2) + X(a, 9) * X(b, 4)) / X(c, 4), J,
               "(g_{n+2} + a_{n+9} b_{n+4})/c_{n+4} = J_n");
  bld.identity("aux.Jt-forms", "auxiliary", (X(g, -1) + X(a, -8) * X(b, -4)) / X(c, -3), J,
               "Jt_n = (g_{n-1} + a_{n-8} b_{n-4})/c_{n-3} = J_n");
  bld.identity("aux.J-product-form", "auxiliary", J, X(a, -3) * X(a, 4) - X(i, 0), "J_n = a_{n-3} a_{n+4} - i_n");
  bld.identity("aux.tricky", "auxiliary", X(a, 0) * X(a, 13) - X(i, 6), J.shifted(3) * J.shifted(4) - 1,
               "a_n a_{n+13} - i_{n+6} = J_{n+3} J_{n+4} - 1");
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
    case Verdict::Evidence:
      return "EVIDENCE";
  }
  return "?";
}

Registry build_registry(const FamilySpec& spec) {
  spec.validate();
  Registry r;
  r.family = spec;
  switch (spec.family) {
    case Family::A:
      build_a(r);
      break;
    case Family::D:
      build_d(r);
      break;
    case Family::E6:
      build_e6(r);
      break;
    case Family::E7:
      build_e7(r);
      break;
    case Family::E8:
      build_e8(r);
      break;
  }
  return r;
}

}  // namespace friezekit
