#pragma once

#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "friezekit/arith.hpp"
#include "friezekit/linalg.hpp"
#include "friezekit/quiver.hpp"

namespace friezekit {

enum class Mode { Symbolic, Specialized };
std::string to_string(Mode m);

// One mutation of the composite map: x_k <- (prod_in + prod_out) / x_k, with
// the products read off the quiver as mutated so far.
struct MutationStep {
  int vertex = 0;
  std::vector<std::pair<int, int>> in;   // (i, b_ik) with b_ik > 0
  std::vector<std::pair<int, int>> out;  // (i, b_ki) with b_ki > 0
};

struct MutationPlan {
  std::vector<int> order;
  std::vector<MutationStep> steps;
};

// Plan for the composite mutation along admissible_order(q). Throws
// InternalError if the composite does not return the quiver to itself.
MutationPlan make_plan(const Quiver& dynamics);

struct FriezeOptions {
  std::size_t term_budget = 2'000'000;
};

template <class V>
struct FriezeTable {
  Quiver quiver;  // the drawn quiver
  Mode mode = Mode::Specialized;
  MutationPlan plan;
  std::vector<std::vector<V>> columns;

  int n_max() const { return static_cast<int>(columns.size()) - 1; }
  const V& at(int vertex, int n) const {
    if (n < 0 || n > n_max() || vertex < 0 || vertex >= quiver.size())
      throw UsageError("frieze index out of range: vertex " + std::to_string(vertex) + ", n " + std::to_string(n));
    return columns[static_cast<std::size_t>(n)][static_cast<std::size_t>(vertex)];
  }
};

template <class V>
V product(const std::vector<V>& x, const std::vector<std::pair<int, int>>& factors, const V& one) {
  V r = one;
  for (auto [i, e] : factors)
    for (int k = 0; k < e; ++k) r = r * x[static_cast<std::size_t>(i)];
  return r;
}

template <class V>
std::vector<V> apply_plan(const MutationPlan& plan, std::vector<V> x) {
  if (x.empty()) throw UsageError("empty frieze column");
  const V one = Arith<V>::one(x[0]);
  for (const auto& s : plan.steps) {
    V num = product(x, s.in, one) + product(x, s.out, one);
    auto k = static_cast<std::size_t>(s.vertex);
    x[k] = Arith<V>::divide(num, x[k]);
  }
  return x;
}

namespace detail {

template <class V>
std::vector<V> next_column(const MutationPlan& plan, const std::vector<V>& col) {
  if constexpr (std::is_same_v<V, LaurentPoly>) {
    try {
      return apply_plan(plan, col);
    } catch (const DivisionNotExact& e) {
      throw InternalError(std::string("Laurent phenomenon violated in symbolic frieze: ") + e.what());
    }
  } else {
    return apply_plan(plan, col);
  }
}

template <class V>
std::size_t table_terms(const std::vector<std::vector<V>>& cols) {
  std::size_t t = 0;
  for (const auto& c : cols)
    for (const auto& v : c) t += Arith<V>::terms(v);
  return t;
}

}  // namespace detail

template <class V>
FriezeTable<V> frieze_step(FriezeTable<V> t, const FriezeOptions& opt = {}) {
  if (t.columns.empty()) throw UsageError("frieze_step on an empty table");
  t.columns.push_back(detail::next_column(t.plan, t.columns.back()));
  if (t.mode == Mode::Symbolic && detail::table_terms(t.columns) > opt.term_budget)
    throw SymbolicBudgetExceeded("symbolic frieze exceeded the term budget at n = " + std::to_string(t.n_max()));
  return t;
}

template <class V>
FriezeTable<V> frieze_sequence(const Quiver& q, std::vector<V> init, int n_max, const FriezeOptions& opt = {},
                               Mode mode = Mode::Specialized) {
  if (n_max < 0) throw UsageError("n_max must be nonnegative");
  if (static_cast<int>(init.size()) != q.size()) throw UsageError("initial column has the wrong length");
  FriezeTable<V> t{q, mode, make_plan(dynamics_quiver(q)), {}};
  t.columns.reserve(static_cast<std::size_t>(n_max) + 1);
  t.columns.push_back(std::move(init));
  std::size_t terms = detail::table_terms(t.columns);
  for (int n = 0; n < n_max; ++n) {
    t.columns.push_back(detail::next_column(t.plan, t.columns.back()));
    if (mode == Mode::Symbolic) {
      for (const auto& v : t.columns.back()) terms += Arith<V>::terms(v);
      if (terms > opt.term_budget)
        throw SymbolicBudgetExceeded("symbolic frieze exceeded the term budget at n = " + std::to_string(n + 1));
    }
  }
  return t;
}

FriezeTable<Rat> frieze_units(const Quiver& q, int n_max);
FriezeTable<Rat> frieze_specialized(const Quiver& q, std::vector<Rat> init, int n_max);
// Initial variables are named by the vertex labels.
FriezeTable<LaurentPoly> frieze_symbolic(const Quiver& q, int n_max, const FriezeOptions& opt = {});

// x_{n+p+q} x_n = x_{n+p} x_{n+q} + 1; returns n_max + p + q terms.
template <class V>
std::vector<V> a_type_sequence(int p, int q, std::vector<V> init, int n_max) {
  if (p < 1 || q < 1) throw UsageError("A recurrence requires p, q >= 1");
  const std::size_t w = static_cast<std::size_t>(p + q);
  if (init.size() != w) throw UsageError("A recurrence needs p+q initial values");
  if (n_max < 0) throw UsageError("n_max must be nonnegative");
  const V one = Arith<V>::one(init[0]);
  std::vector<V> x = std::move(init);
  x.reserve(w + static_cast<std::size_t>(n_max));
  for (std::size_t n = 0; n < static_cast<std::size_t>(n_max); ++n) {
    V num = x[n + static_cast<std::size_t>(p)] * x[n + static_cast<std::size_t>(q)] + one;
    x.push_back(Arith<V>::divide(num, x[n]));
  }
  return x;
}

// Exact Jacobian of `steps` applications of the cluster map at column n.
RatMatrix jacobian_of_steps(const FriezeTable<Rat>& t, int n, int steps);
RatMatrix jacobian_of_step(const FriezeTable<Rat>& t, int n);

// Checks J^T Omega(phi(x)) J == Omega(x) with Omega_ij = b_ij / (x_i x_j).
bool presymplectic_invariant(const Quiver& q, const std::vector<Rat>& x);

}  // namespace friezekit
