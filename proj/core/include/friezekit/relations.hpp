#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "friezekit/arith.hpp"
#include "friezekit/expr.hpp"
#include "friezekit/frieze.hpp"
#include "friezekit/quiver.hpp"

namespace friezekit {

enum class Verdict { Pass, Fail, Inconclusive, Evidence };
std::string to_string(Verdict v);

// A named periodic quantity. Grid vertices are frieze vertices, except for
// A(p,q) where the grid is the single sequence x_n (vertex 0).
struct QuantityDef {
  std::string id;  // "E6.J"
  FamilySpec family;
  std::string symbol;  // "J", "Jt", "K", ...
  Expr expr;
  int period = 0;
  bool conjectural = false;
  std::string citation;
};

enum class ClaimKind {
  Period,          // lhs(n + period) == lhs(n)
  Identity,        // lhs(n) == rhs(n), possibly involving K
  PsiStep,         // Psi_n * prod L_{n+o} == Psi_{n+shift}
  TraceDet,        // det(M_n) == 1
  TraceShift,      // tr(M_{n+1}) == tr(M_n)
  SequenceMatch,   // A(p,q): X^k_n == x_{n(p+q)+k}
};

struct Claim {
  std::string id;
  std::string group;  // period | trace | linear | atype | auxiliary | kernel | conjecture | structure
  ClaimKind kind = ClaimKind::Identity;
  Expr lhs;
  Expr rhs;
  int period = 0;
  bool conjectural = false;
  std::string citation;
  std::string note;
};

struct Mat2Expr {
  std::array<Expr, 4> e;  // row-major
};

// Monodromy machinery: Psi_n L_{n+o_1} ... L_{n+o_k} = Psi_{n+shift} and
// K = tr(L_{n+t_1} ... L_{n+t_j}).
struct PsiSystem {
  Mat2Expr psi;
  Mat2Expr l;
  std::vector<int> factor_offsets;
  int shift = 0;
  std::vector<int> trace_offsets;
};

struct ATypeRow {
  int a = 0;
  int p = 0;
  bool conjectural = false;
};

struct Registry {
  FamilySpec family;
  std::vector<std::string> labels;  // grid vertex labels
  std::vector<int> extending;       // grid vertices
  int b = 0;                        // constant linear relation step
  std::vector<QuantityDef> quantities;
  std::vector<ATypeRow> atype_rows;
  PsiSystem psi;
  std::vector<Claim> claims;
};

Registry build_registry(const FamilySpec& spec);

// --- evaluation -------------------------------------------------------------

template <class S>
struct EvalType {
  using type = S;
};
template <>
struct EvalType<LaurentPoly> {
  using type = LaurentFrac;
};

// Columns of values, columns[n][vertex].
template <class S>
struct Grid {
  const std::vector<std::vector<S>>* columns = nullptr;
  int depth() const { return columns ? static_cast<int>(columns->size()) - 1 : -1; }
};

template <class S>
class GridSource {
 public:
  using V = typename EvalType<S>::type;

  GridSource(Grid<S> g, const V* kappa = nullptr) : g_(g), kappa_(kappa) {
    if (!g_.columns || g_.columns->empty() || g_.columns->front().empty()) throw UsageError("empty value grid");
  }

  V var(int vertex, int n) const {
    if (n < 0 || n > g_.depth()) throw UsageError("expression window overflows the table at n = " + std::to_string(n));
    const auto& col = (*g_.columns)[static_cast<std::size_t>(n)];
    if (vertex < 0 || static_cast<std::size_t>(vertex) >= col.size()) throw UsageError("vertex out of range");
    return V(col[static_cast<std::size_t>(vertex)]);
  }
  V constant(const Rat& c) const { return Arith<V>::constant(like(), c); }
  V kappa() const {
    if (!kappa_) throw UsageError("expression needs K but none was computed");
    return *kappa_;
  }
  V divide(const V& a, const V& b) const { return Arith<V>::divide(a, b); }

 private:
  V like() const { return V((*g_.columns)[0][0]); }
  Grid<S> g_;
  const V* kappa_;
};

template <class V>
using Mat2 = std::array<V, 4>;

template <class V>
Mat2<V> mat2_mul(const Mat2<V>& x, const Mat2<V>& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

template <class V>
bool mat2_equal(const Mat2<V>& x, const Mat2<V>& y) {
  for (int i = 0; i < 4; ++i)
    if (!Arith<V>::equal(x[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(i)])) return false;
  return true;
}

template <class S>
Mat2<typename EvalType<S>::type> eval_mat2(const Mat2Expr& m, const GridSource<S>& src, int n) {
  using V = typename EvalType<S>::type;
  return {m.e[0].eval<V>(src, n), m.e[1].eval<V>(src, n), m.e[2].eval<V>(src, n), m.e[3].eval<V>(src, n)};
}

// M_n = prod_j L_{n+offsets[j]}.
template <class S>
Mat2<typename EvalType<S>::type> monodromy(const PsiSystem& ps, const GridSource<S>& src, int n,
                                           const std::vector<int>& offsets) {
  auto m = eval_mat2(ps.l, src, n + offsets.at(0));
  for (std::size_t j = 1; j < offsets.size(); ++j) m = mat2_mul(m, eval_mat2(ps.l, src, n + offsets[j]));
  return m;
}

// Offset window [lo, hi] of the trace product at n = 0.
std::pair<int, int> trace_window(const PsiSystem& ps);
// Smallest n at which the trace product only reads nonnegative times.
int kappa_base(const PsiSystem& ps);

// K = trace(M_n). Throws InternalError if det(M_n) != 1.
template <class S>
typename EvalType<S>::type trace_invariant(const PsiSystem& ps, Grid<S> g, int n) {
  using V = typename EvalType<S>::type;
  GridSource<S> src(g);
  auto m = monodromy(ps, src, n, ps.trace_offsets);
  V det = m[0] * m[3] - m[1] * m[2];
  if (!Arith<V>::equal(det, src.constant(Rat(1)))) throw InternalError("det(M_n) != 1 at n = " + std::to_string(n));
  return m[0] + m[3];
}

template <class S>
typename EvalType<S>::type eval_quantity(const QuantityDef& def, Grid<S> g, int n) {
  GridSource<S> src(g);
  return def.expr.template eval<typename EvalType<S>::type>(src, n);
}

// Small matrix checks on explicit values.
template <class V>
bool dodgson_check(const std::array<std::array<V, 3>, 3>& x) {
  auto d2 = [&](int i, int j) -> V {
    return x[i][j] * x[i + 1][j + 1] - x[i][j + 1] * x[i + 1][j];
  };
  V det = x[0][0] * (x[1][1] * x[2][2] - x[1][2] * x[2][1]) - x[0][1] * (x[1][0] * x[2][2] - x[1][2] * x[2][0]) +
          x[0][2] * (x[1][0] * x[2][1] - x[1][1] * x[2][0]);
  return Arith<V>::equal(det * x[1][1], d2(0, 0) * d2(1, 1) - d2(0, 1) * d2(1, 0));
}

template <class V>
bool kernel_vector_check(const std::vector<std::array<V, 3>>& rows, const V& alpha) {
  if (rows.size() < 2) throw UsageError("kernel_vector_check needs at least two rows");
  for (const auto& r : rows)
    if (!Arith<V>::equal(r[0] - alpha * r[1] + r[2], r[0] - r[0])) return false;
  return true;
}

// --- per-table checking -----------------------------------------------------

// Result of one claim on one table.
struct Outcome {
  int n_lo = 0;
  int n_hi = -1;  // empty window when n_hi < n_lo
  std::optional<int> fail_n;
  std::string reason;  // why the window is empty, or what failed
  bool evaluated() const { return n_hi >= n_lo; }
};

// Smallest table depth for a single instance of the claim.
int claim_min_depth(const Claim& c, const Registry& r);
// Depth covering `instances` consecutive n values.
int claim_depth(const Claim& c, const Registry& r, int instances);

struct ClaimContext {
  const Registry* registry = nullptr;
  int max_instances = 0;  // 0: every n the table allows
};

// Sequence grid for A(p,q); frieze grid for everything else.
std::vector<Outcome> check_claims_rat(const std::vector<Claim>& claims, const ClaimContext& ctx,
                                      const std::vector<std::vector<Rat>>& grid,
                                      const FriezeTable<Rat>* frieze);
std::vector<Outcome> check_claims_symbolic(const std::vector<Claim>& claims, const ClaimContext& ctx,
                                           const std::vector<std::vector<LaurentPoly>>& grid,
                                           const FriezeTable<LaurentPoly>* frieze = nullptr);

// Single-claim forms of the relation checks on one specialized table.
Outcome check_period(const QuantityDef& def, const Registry& r, const std::vector<std::vector<Rat>>& grid,
                     int max_instances = 0);
Outcome check_constant_linear_relation(const Registry& r, const std::vector<std::vector<Rat>>& grid, int vertex,
                                       int max_instances = 0);
Outcome check_atype_recurrence(const Registry& r, const std::vector<std::vector<Rat>>& grid, int vertex,
                               const ATypeRow& row, int max_instances = 0);

// --- trial runner -----------------------------------------------------------

struct CheckReport {
  std::string id;
  std::string family;
  std::string group;
  Mode mode = Mode::Specialized;
  int trials = 0;
  int n_lo = 0;
  int n_hi = -1;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<std::uint64_t> witness_seed;
  std::optional<int> witness_n;
  std::optional<int> witness_trial;
  std::string citation;
  std::string note;
  bool conjectural = false;
};

struct RunOptions {
  Mode mode = Mode::Specialized;
  int trials = 20;
  std::uint64_t rng_seed = 1;
  int n_max = 0;              // 0: derived from the selected claims
  int max_instances = 0;      // cap on tested n per claim and table; 0 = all
  std::size_t term_budget = FriezeOptions{}.term_budget;
  unsigned threads = 0;       // 0: hardware concurrency
};

bool filter_matches(const std::string& id, const std::string& group, const std::string& family,
                    const std::string& filter);
// Claims matching any filter by id prefix, by id prefix after the family
// name, or by group ("all" or an empty list selects every claim).
std::vector<Claim> select_claims(const Registry& r, const std::vector<std::string>& filters);
// Depth needed to give every selected claim `instances` instances.
int default_depth(const Registry& r, const std::vector<Claim>& claims, int instances);

// Rational initial values for one trial; A(p,q) draws p+q sequence values.
std::vector<Rat> trial_point(const FamilySpec& spec, std::uint64_t seed);

std::vector<CheckReport> run_claims(const Registry& r, const std::vector<Claim>& claims, const RunOptions& opt);

// Conjecture probe: the registry's conjectural claims with the given prefix.
std::vector<CheckReport> probe_conjecture(const Registry& r, const std::string& id_prefix, RunOptions opt);

}  // namespace friezekit
