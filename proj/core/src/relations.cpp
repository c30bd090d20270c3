#include "friezekit/relations.hpp"

#include <algorithm>

#include "friezekit/rng.hpp"
#include "parallel.hpp"

namespace friezekit {

namespace {

struct Window {
  int lo = 1;
  int hi = 0;
  bool empty() const { return lo > hi; }
  void add(int a, int b) {
    if (a > b) return;
    if (empty()) {
      lo = a;
      hi = b;
    } else {
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    }
  }
  void add(const Expr& e, int shift = 0) {
    if (e.has_window()) add(e.min_offset() + shift, e.max_offset() + shift);
  }
  void add(const Mat2Expr& m, int shift = 0) {
    for (const auto& e : m.e) add(e, shift);
  }
};

Window mat_window(const Mat2Expr& m) {
  Window w;
  w.add(m);
  return w;
}

bool uses_kappa(const Claim& c) {
  return c.kind == ClaimKind::Identity && (c.lhs.uses_kappa() || c.rhs.uses_kappa());
}

// Offsets read by one instance of a claim at n = 0.
Window claim_window(const Claim& c, const Registry& r) {
  Window w;
  const PsiSystem& ps = r.psi;
  switch (c.kind) {
    case ClaimKind::Period:
      w.add(c.lhs);
      w.add(c.lhs, c.period);
      break;
    case ClaimKind::Identity:
      w.add(c.lhs);
      w.add(c.rhs);
      break;
    case ClaimKind::PsiStep:
      w.add(ps.psi);
      w.add(ps.psi, ps.shift);
      for (int o : ps.factor_offsets) w.add(ps.l, o);
      break;
    case ClaimKind::TraceDet: {
      auto [lo, hi] = trace_window(ps);
      w.add(lo, hi);
      break;
    }
    case ClaimKind::TraceShift: {
      auto [lo, hi] = trace_window(ps);
      w.add(lo, hi + 1);
      break;
    }
    case ClaimKind::SequenceMatch:
      w.add(0, r.family.p + r.family.q - 1);
      break;
  }
  return w;
}

int kappa_depth(const Registry& r) { return kappa_base(r.psi) + trace_window(r.psi).second; }

template <class S>
using Value = typename EvalType<S>::type;

template <class S>
class Checker {
 public:
  using V = Value<S>;

  Checker(const Registry& r, const std::vector<std::vector<S>>& grid, const FriezeTable<S>* frieze, int max_instances)
      : r_(r), grid_{&grid}, src_(grid_), frieze_(frieze), max_instances_(max_instances) {}

  Outcome run(const Claim& c) {
    if (c.kind == ClaimKind::SequenceMatch) return sequence_match(c);
    Outcome o;
    const Window w = claim_window(c, r_);
    const int depth = grid_.depth();
    o.n_lo = std::max(0, -w.lo);
    o.n_hi = depth - w.hi;
    if (uses_kappa(c) && !ensure_kappa()) {
      o.n_hi = o.n_lo - 1;
      o.reason = "table too shallow to compute K (needs depth " + std::to_string(kappa_depth(r_)) + ")";
      return o;
    }
    cap(o);
    if (!o.evaluated()) {
      o.reason = "table depth " + std::to_string(depth) + " below the " + std::to_string(o.n_lo + w.hi) +
                 " needed for one instance";
      return o;
    }
    GridSource<S> src(grid_, kappa_ ? &*kappa_ : nullptr);
    for (int n = o.n_lo; n <= o.n_hi; ++n) {
      if (!holds(c, src, n)) {
        o.fail_n = n;
        o.reason = "claim fails at n = " + std::to_string(n);
        break;
      }
    }
    return o;
  }

 private:
  void cap(Outcome& o) const {
    if (max_instances_ > 0) o.n_hi = std::min(o.n_hi, o.n_lo + max_instances_ - 1);
  }

  bool ensure_kappa() {
    if (kappa_) return true;
    if (kappa_depth(r_) > grid_.depth()) return false;
    auto m = monodromy(r_.psi, src_, kappa_base(r_.psi), r_.psi.trace_offsets);
    kappa_ = m[0] + m[3];
    return true;
  }

  bool holds(const Claim& c, const GridSource<S>& src, int n) const {
    const PsiSystem& ps = r_.psi;
    switch (c.kind) {
      case ClaimKind::Period:
        return Arith<V>::equal(c.lhs.eval<V>(src, n), c.lhs.eval<V>(src, n + c.period));
      case ClaimKind::Identity:
        return Arith<V>::equal(c.lhs.eval<V>(src, n), c.rhs.eval<V>(src, n));
      case ClaimKind::PsiStep: {
        auto lhs = eval_mat2(ps.psi, src, n);
        for (int o : ps.factor_offsets) lhs = mat2_mul(lhs, eval_mat2(ps.l, src, n + o));
        return mat2_equal(lhs, eval_mat2(ps.psi, src, n + ps.shift));
      }
      case ClaimKind::TraceDet: {
        auto m = monodromy(ps, src, n, ps.trace_offsets);
        return Arith<V>::equal(m[0] * m[3] - m[1] * m[2], src.constant(Rat(1)));
      }
      case ClaimKind::TraceShift: {
        auto a = monodromy(ps, src, n, ps.trace_offsets);
        auto b = monodromy(ps, src, n + 1, ps.trace_offsets);
        return Arith<V>::equal(a[0] + a[3], b[0] + b[3]);
      }
      case ClaimKind::SequenceMatch:
        break;
    }
    throw InternalError("unhandled claim kind");
  }

  // X^k_n == x_{n(p+q)+k} for every column of the frieze the sequence covers.
  Outcome sequence_match(const Claim&) {
    Outcome o;
    const int w = r_.family.p + r_.family.q;
    if (!frieze_) {
      o.reason = "no frieze table supplied";
      return o;
    }
    o.n_hi = std::min(frieze_->n_max(), (grid_.depth() + 1) / w - 1);
    cap(o);
    for (int n = o.n_lo; n <= o.n_hi; ++n)
      for (int k = 0; k < w; ++k) {
        const S& seq = (*grid_.columns)[static_cast<std::size_t>(n * w + k)][0];
        if (!(frieze_->at(k, n) == seq)) {
          o.fail_n = n;
          o.reason = "frieze column differs from the sequence at n = " + std::to_string(n);
          return o;
        }
      }
    return o;
  }

  const Registry& r_;
  Grid<S> grid_;
  GridSource<S> src_;
  const FriezeTable<S>* frieze_;
  int max_instances_;
  std::optional<V> kappa_;
};

template <class S>
std::vector<Outcome> check_all(const std::vector<Claim>& claims, const ClaimContext& ctx,
                               const std::vector<std::vector<S>>& grid, const FriezeTable<S>* frieze) {
  if (!ctx.registry) throw UsageError("claim context without a registry");
  Checker<S> checker(*ctx.registry, grid, frieze, ctx.max_instances);
  std::vector<Outcome> out;
  out.reserve(claims.size());
  for (const auto& c : claims) out.push_back(checker.run(c));
  return out;
}

// One specialized table (sequence grid for A) plus the matching frieze.
struct RatTables {
  std::vector<std::vector<Rat>> grid;
  std::optional<FriezeTable<Rat>> frieze;
};

RatTables build_rat(const Registry& r, const Quiver& q, const std::vector<Rat>& point, int depth) {
  RatTables t;
  if (r.family.family == Family::A) {
    const int w = r.family.p + r.family.q;
    auto seq = a_type_sequence<Rat>(r.family.p, r.family.q, point, std::max(0, depth + 1 - w));
    for (auto& v : seq) t.grid.push_back({std::move(v)});
    const int fd = static_cast<int>(t.grid.size()) / w - 1;
    if (fd >= 0) t.frieze = frieze_specialized(q, point, fd);
  } else {
    t.frieze = frieze_specialized(q, point, depth);
    t.grid = t.frieze->columns;
  }
  return t;
}

constexpr int kMaxRedraws = 64;

struct TrialResult {
  std::uint64_t seed = 0;
  std::vector<Outcome> outcomes;
};

TrialResult run_trial(const Registry& r, const Quiver& q, const std::vector<Claim>& claims, const ClaimContext& ctx,
                      int depth, std::uint64_t seed) {
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : trial_seed(seed, static_cast<std::uint64_t>(attempt));
    try {
      RatTables t = build_rat(r, q, trial_point(r.family, s), depth);
      return {s, check_claims_rat(claims, ctx, t.grid, t.frieze ? &*t.frieze : nullptr)};
    } catch (const BadSpecialization&) {
    }
  }
  throw InternalError("no usable specialization point after " + std::to_string(kMaxRedraws) + " draws");
}

CheckReport base_report(const Registry& r, const Claim& c, Mode mode) {
  CheckReport rep;
  rep.id = c.id;
  rep.family = r.family.name();
  rep.group = c.group;
  rep.mode = mode;
  rep.citation = c.citation;
  rep.note = c.note;
  rep.conjectural = c.conjectural;
  return rep;
}

// Failing trial wins (lowest index); then any evaluated window decides.
CheckReport merge(const Registry& r, const Claim& c, Mode mode, const std::vector<TrialResult>& trials, std::size_t i) {
  CheckReport rep = base_report(r, c, mode);
  rep.trials = static_cast<int>(trials.size());
  bool evaluated = false;
  std::string reason;
  for (std::size_t t = 0; t < trials.size(); ++t) {
    const Outcome& o = trials[t].outcomes[i];
    if (t == 0) {
      rep.n_lo = o.n_lo;
      rep.n_hi = o.n_hi;
      reason = o.reason;
    }
    if (o.fail_n) {
      rep.verdict = Verdict::Fail;
      rep.witness_seed = trials[t].seed;
      rep.witness_n = *o.fail_n;
      rep.witness_trial = static_cast<int>(t);
      rep.note = rep.note.empty() ? o.reason : rep.note + "; " + o.reason;
      return rep;
    }
    evaluated = evaluated || o.evaluated();
  }
  if (!evaluated) {
    rep.verdict = Verdict::Inconclusive;
    const std::string why = trials.empty() ? "no trials" : reason;
    rep.note = rep.note.empty() ? why : rep.note + "; " + why;
  } else {
    rep.verdict = c.conjectural ? Verdict::Evidence : Verdict::Pass;
  }
  return rep;
}

std::vector<CheckReport> run_specialized(const Registry& r, const std::vector<Claim>& claims, const RunOptions& opt) {
  const Quiver q = build_affine_quiver(r.family);
  const int depth = opt.n_max > 0 ? opt.n_max : default_depth(r, claims, 64);
  const ClaimContext ctx{&r, opt.max_instances};
  const int trials = std::max(0, opt.trials);
  std::vector<TrialResult> results(static_cast<std::size_t>(trials));
  detail::parallel_for(trials, opt.threads, [&](int t) {
    results[static_cast<std::size_t>(t)] =
        run_trial(r, q, claims, ctx, depth, trial_seed(opt.rng_seed, static_cast<std::uint64_t>(t)));
  });
  std::vector<CheckReport> out;
  for (std::size_t i = 0; i < claims.size(); ++i) out.push_back(merge(r, claims[i], Mode::Specialized, results, i));
  return out;
}

bool all_positive(const std::vector<std::vector<LaurentPoly>>& cols) {
  for (const auto& c : cols)
    for (const auto& v : c)
      if (!v.coefficients_positive()) return false;
  return true;
}

// Symbolic columns up to `depth` or the term budget, whichever comes first.
struct SymbolicBuild {
  std::vector<std::vector<LaurentPoly>> grid;
  std::optional<FriezeTable<LaurentPoly>> frieze;
  std::string stop;        // why the build stopped short
  std::string violation;   // Laurent phenomenon failure
};

SymbolicBuild build_symbolic(const Registry& r, const Quiver& q, int depth, std::size_t budget) {
  SymbolicBuild b;
  VarsPtr vars = make_variables(q.labels);
  std::vector<LaurentPoly> init;
  for (int i = 0; i < q.size(); ++i) init.push_back(LaurentPoly::variable(vars, static_cast<std::size_t>(i)));
  std::size_t terms = 0;
  auto over = [&](const std::vector<LaurentPoly>& col) {
    for (const auto& v : col) terms += v.size();
    return terms > budget;
  };
  try {
    if (r.family.family == Family::A) {
      const int p = r.family.p, qq = r.family.q;
      for (auto& v : init) b.grid.push_back({v});
      over(init);
      const LaurentPoly one = LaurentPoly::constant(vars, 1);
      while (static_cast<int>(b.grid.size()) <= depth) {
        const std::size_t n = b.grid.size() - static_cast<std::size_t>(p + qq);
        LaurentPoly num = b.grid[n + static_cast<std::size_t>(p)][0] * b.grid[n + static_cast<std::size_t>(qq)][0] + one;
        std::vector<LaurentPoly> col{laurent_exact_div(num, b.grid[n][0])};
        if (over(col)) {
          b.stop = "term budget reached at n = " + std::to_string(b.grid.size());
          break;
        }
        b.grid.push_back(std::move(col));
      }
      const int w = p + qq;
      const int fd = static_cast<int>(b.grid.size()) / w - 1;
      FriezeTable<LaurentPoly> f{q, Mode::Symbolic, make_plan(dynamics_quiver(q)), {init}};
      for (int n = 0; n < fd; ++n) f.columns.push_back(detail::next_column(f.plan, f.columns.back()));
      b.frieze = std::move(f);
    } else {
      FriezeTable<LaurentPoly> f{q, Mode::Symbolic, make_plan(dynamics_quiver(q)), {init}};
      over(init);
      while (f.n_max() < depth) {
        auto col = detail::next_column(f.plan, f.columns.back());
        if (over(col)) {
          b.stop = "term budget reached at n = " + std::to_string(f.n_max() + 1);
          break;
        }
        f.columns.push_back(std::move(col));
      }
      b.grid = f.columns;
      b.frieze = std::move(f);
    }
  } catch (const DivisionNotExact& e) {
    b.violation = e.what();
  } catch (const InternalError& e) {
    b.violation = e.what();
  }
  return b;
}

// Default symbolic depth: roughly what builds in under half a minute.
int symbolic_depth_cap(const FamilySpec& f) {
  switch (f.family) {
    case Family::A:
      return 24;
    case Family::D:
      return f.N == 4 ? 12 : f.N <= 6 ? 9 : 7;
    case Family::E6:
      return 6;
    case Family::E7:
      return 5;
    case Family::E8:
      return 4;
  }
  return 4;
}

std::vector<CheckReport> run_symbolic(const Registry& r, const std::vector<Claim>& claims, const RunOptions& opt) {
  const Quiver q = build_affine_quiver(r.family);
  const int depth = opt.n_max > 0 ? opt.n_max : std::min(default_depth(r, claims, 1), symbolic_depth_cap(r.family));
  SymbolicBuild b = build_symbolic(r, q, depth, opt.term_budget);
  const int built = b.grid.empty() ? -1 : static_cast<int>(b.grid.size()) - 1;

  std::vector<CheckReport> out;
  Claim laurent;
  laurent.id = r.family.name() + ".laurent";
  laurent.group = "structure";
  laurent.citation = "every frieze entry is a Laurent polynomial with integer coefficients";
  CheckReport lr = base_report(r, laurent, Mode::Symbolic);
  lr.trials = 1;
  lr.n_lo = 0;
  lr.n_hi = built;
  if (!b.violation.empty()) {
    lr.verdict = Verdict::Fail;
    lr.witness_n = built + 1;
    lr.note = b.violation;
  } else {
    lr.verdict = built >= 0 ? Verdict::Pass : Verdict::Inconclusive;
    lr.note = std::string("positivity: ") +
              (all_positive(b.grid) ? "all coefficients positive" : "negative coefficient present");
    if (b.frieze && !all_positive(b.frieze->columns)) lr.note = "positivity: negative coefficient present";
    if (!b.stop.empty()) lr.note += "; " + b.stop;
  }
  out.push_back(lr);

  std::vector<Outcome> outcomes;
  if (b.violation.empty() && built >= 0) {
    outcomes = check_claims_symbolic(claims, ClaimContext{&r, opt.max_instances}, b.grid,
                                     b.frieze ? &*b.frieze : nullptr);
  } else {
    outcomes.assign(claims.size(), Outcome{0, -1, std::nullopt, "symbolic table unavailable"});
  }
  std::vector<TrialResult> one{{0, std::move(outcomes)}};
  for (std::size_t i = 0; i < claims.size(); ++i) {
    CheckReport rep = merge(r, claims[i], Mode::Symbolic, one, i);
    rep.witness_seed.reset();
    if (rep.verdict == Verdict::Inconclusive && !b.stop.empty()) rep.note += "; " + b.stop;
    out.push_back(std::move(rep));
  }
  return out;
}

Claim single(const std::string& id, ClaimKind kind, Expr lhs, Expr rhs, int period) {
  Claim c;
  c.id = id;
  c.kind = kind;
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  c.period = period;
  return c;
}

Outcome check_one(const Registry& r, const Claim& c, const std::vector<std::vector<Rat>>& grid, int max_instances) {
  Outcome o = check_claims_rat({c}, ClaimContext{&r, max_instances}, grid, nullptr).front();
  if (!o.evaluated()) throw UsageError(c.id + ": " + o.reason);
  return o;
}

void require_grid_vertex(const Registry& r, int vertex) {
  if (vertex < 0 || static_cast<std::size_t>(vertex) >= r.labels.size())
    throw UsageError("vertex " + std::to_string(vertex) + " out of range");
}

}  // namespace

std::pair<int, int> trace_window(const PsiSystem& ps) {
  if (ps.trace_offsets.empty()) throw UsageError("PsiSystem without trace offsets");
  const Window l = mat_window(ps.l);
  const auto [mn, mx] = std::minmax_element(ps.trace_offsets.begin(), ps.trace_offsets.end());
  if (l.empty()) return {*mn, *mx};
  return {l.lo + *mn, l.hi + *mx};
}

int kappa_base(const PsiSystem& ps) { return std::max(0, -trace_window(ps).first); }

int claim_min_depth(const Claim& c, const Registry& r) {
  if (c.kind == ClaimKind::SequenceMatch) return r.family.p + r.family.q - 1;
  const Window w = claim_window(c, r);
  int d = std::max(0, -w.lo) + w.hi;
  if (uses_kappa(c)) d = std::max(d, kappa_depth(r));
  return d;
}

int claim_depth(const Claim& c, const Registry& r, int instances) {
  instances = std::max(1, instances);
  if (c.kind == ClaimKind::SequenceMatch) return instances * (r.family.p + r.family.q) - 1;
  return claim_min_depth(c, r) + instances - 1;
}

std::vector<Outcome> check_claims_rat(const std::vector<Claim>& claims, const ClaimContext& ctx,
                                      const std::vector<std::vector<Rat>>& grid, const FriezeTable<Rat>* frieze) {
  return check_all<Rat>(claims, ctx, grid, frieze);
}

std::vector<Outcome> check_claims_symbolic(const std::vector<Claim>& claims, const ClaimContext& ctx,
                                           const std::vector<std::vector<LaurentPoly>>& grid,
                                           const FriezeTable<LaurentPoly>* frieze) {
  return check_all<LaurentPoly>(claims, ctx, grid, frieze);
}

Outcome check_period(const QuantityDef& def, const Registry& r, const std::vector<std::vector<Rat>>& grid,
                     int max_instances) {
  if (def.period <= 0) throw UsageError(def.id + ": period must be positive");
  return check_one(r, single(def.id + ".period", ClaimKind::Period, def.expr, Expr(), def.period), grid,
                   max_instances);
}

Outcome check_constant_linear_relation(const Registry& r, const std::vector<std::vector<Rat>>& grid, int vertex,
                                       int max_instances) {
  require_grid_vertex(r, vertex);
  if (std::find(r.extending.begin(), r.extending.end(), vertex) == r.extending.end())
    throw UsageError("vertex " + r.labels[static_cast<std::size_t>(vertex)] + " is not extending");
  Expr rel = Expr::var(vertex, 2 * r.b) - Expr::kappa() * Expr::var(vertex, r.b) + Expr::var(vertex, 0);
  return check_one(r, single("linear", ClaimKind::Identity, rel, Expr(), 0), grid, max_instances);
}

Outcome check_atype_recurrence(const Registry& r, const std::vector<std::vector<Rat>>& grid, int vertex,
                               const ATypeRow& row, int max_instances) {
  require_grid_vertex(r, vertex);
  if (row.a <= 0 || row.p <= 0) throw UsageError("A-type row needs positive a and p");
  Expr g = Expr::var(vertex, row.a + row.p) * Expr::var(vertex, 0) -
           Expr::var(vertex, row.a) * Expr::var(vertex, row.p);
  return check_one(r, single("atype", ClaimKind::Period, g, Expr(), row.a), grid, max_instances);
}

bool filter_matches(const std::string& id, const std::string& group, const std::string& family,
                    const std::string& filter) {
  if (filter.empty() || filter == "all") return true;
  if (id.rfind(filter, 0) == 0 || group == filter) return true;
  const std::string prefix = family + ".";
  return id.rfind(prefix, 0) == 0 && id.compare(prefix.size(), filter.size(), filter) == 0;
}

std::vector<Claim> select_claims(const Registry& r, const std::vector<std::string>& filters) {
  if (filters.empty()) return r.claims;
  std::vector<Claim> out;
  const std::string fam = r.family.name();
  for (const auto& c : r.claims)
    if (std::any_of(filters.begin(), filters.end(), [&](const std::string& f) { return filter_matches(c.id, c.group, fam, f); }))
      out.push_back(c);
  return out;
}

int default_depth(const Registry& r, const std::vector<Claim>& claims, int instances) {
  int d = 0;
  for (const auto& c : claims) d = std::max(d, claim_depth(c, r, instances));
  return d;
}

std::vector<Rat> trial_point(const FamilySpec& spec, std::uint64_t seed) {
  spec.validate();
  const std::size_t n = spec.family == Family::A ? static_cast<std::size_t>(spec.p + spec.q)
                                                 : static_cast<std::size_t>(build_affine_quiver(spec).size());
  Rng rng(seed);
  return rng.rationals(n);
}

std::vector<CheckReport> run_claims(const Registry& r, const std::vector<Claim>& claims, const RunOptions& opt) {
  if (opt.mode == Mode::Symbolic) return run_symbolic(r, claims, opt);
  return run_specialized(r, claims, opt);
}

std::vector<CheckReport> probe_conjecture(const Registry& r, const std::string& id_prefix, RunOptions opt) {
  std::vector<Claim> claims;
  for (const auto& c : select_claims(r, {id_prefix}))
    if (c.conjectural) claims.push_back(c);
  opt.mode = Mode::Specialized;
  return run_claims(r, claims, opt);
}

}  // namespace friezekit
