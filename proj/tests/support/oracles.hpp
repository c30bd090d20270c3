#pragma once

// Independent oracles for the unit tests. Nothing here calls into the library's
// arithmetic or mutation code; values are built from plain maps and from the
// mutation relations typed out vertex by vertex.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "friezekit/laurent.hpp"
#include "friezekit/quiver.hpp"
#include "friezekit/rng.hpp"

namespace oracle {

using friezekit::BigInt;
using friezekit::Rat;

// Dense-key sparse polynomial: exponent vector -> coefficient.
using NaivePoly = std::map<std::vector<int>, BigInt>;

inline NaivePoly naive(const friezekit::LaurentPoly& p) {
  NaivePoly r;
  const std::size_t n = p.variables()->size();
  for (const auto& t : p.terms()) {
    std::vector<int> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = t.mono.exp[i];
    r[e] += t.coeff;
  }
  return r;
}

inline void prune(NaivePoly& p) {
  for (auto it = p.begin(); it != p.end();) it = it->second == 0 ? p.erase(it) : std::next(it);
}

inline NaivePoly add(NaivePoly a, const NaivePoly& b, int sign = 1) {
  for (const auto& [e, c] : b) a[e] += sign * c;
  prune(a);
  return a;
}

inline NaivePoly mul(const NaivePoly& a, const NaivePoly& b) {
  NaivePoly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r[e] += ca * cb;
    }
  prune(r);
  return r;
}

inline Rat eval(const NaivePoly& p, const std::vector<Rat>& x) {
  Rat s = 0;
  for (const auto& [e, c] : p) {
    Rat t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) t *= x[i];
      for (int k = 0; k > e[i]; --k) t /= x[i];
    }
    s += t;
  }
  return s;
}

inline friezekit::LaurentPoly random_laurent(const friezekit::VarsPtr& vars, friezekit::Rng& rng, int terms,
                                             int max_exp) {
  std::vector<friezekit::LaurentPoly::Term> ts;
  for (int k = 0; k < terms; ++k) {
    friezekit::Monomial m;
    for (std::size_t i = 0; i < vars->size(); ++i)
      m.exp[i] = static_cast<std::int16_t>(rng.uniform(-max_exp, max_exp));
    ts.push_back({m, BigInt(static_cast<long>(rng.uniform(-9, 9)))});
  }
  return friezekit::LaurentPoly::from_terms(vars, std::move(ts));
}

// One column of the frieze for the D, E families, written from the mutation
// relations in vertex-label order (D: X1..X{N+1}; E: a, b, c, ...).
inline std::vector<Rat> relation_step(const friezekit::FamilySpec& f, const std::vector<Rat>& x) {
  using friezekit::Family;
  std::vector<Rat> y = x;
  auto upd = [&](int k, const Rat& rhs) { y[k] = (1 + rhs) / x[k]; };
  switch (f.family) {
    case Family::E6: {
      enum { a, b, c, d, e, ff, g };
      upd(a, x[b]);
      upd(c, x[b] * x[d] * x[ff]);
      upd(e, x[d]);
      upd(g, x[ff]);
      upd(b, y[a] * y[c]);
      upd(d, y[c] * y[e]);
      upd(ff, y[c] * y[g]);
      return y;
    }
    case Family::E7: {
      enum { a, b, c, d, e, ff, g, h };
      upd(a, x[b]);
      upd(c, x[b] * x[d]);
      upd(e, x[d]);
      upd(ff, x[d] * x[g]);
      upd(h, x[g]);
      upd(b, y[a] * y[c]);
      upd(d, y[c] * y[e] * y[ff]);
      upd(g, y[ff] * y[h]);
      return y;
    }
    case Family::E8: {
      enum { a, b, c, d, e, ff, g, h, i };
      upd(a, x[b]);
      upd(c, x[b] * x[d]);
      upd(e, x[d] * x[ff]);
      upd(g, x[ff]);
      upd(h, x[ff] * x[i]);
      upd(b, y[a] * y[c]);
      upd(d, y[c] * y[e]);
      upd(ff, y[e] * y[g] * y[h]);
      upd(i, y[h]);
      return y;
    }
    case Family::D: {
      const int N = f.N;
      auto X = [](int k) { return k - 1; };  // 1-based label to index
      if (N == 4) {
        upd(X(3), x[X(1)] * x[X(2)] * x[X(4)] * x[X(5)]);
        for (int k : {1, 2, 4, 5}) upd(X(k), y[X(3)]);
        return y;
      }
      // Vertices reading the old column: 3 and the odd interior ones, plus
      // N-1 (and then N, N+1 read it too) when N is even.
      upd(X(3), x[X(1)] * x[X(2)] * x[X(4)]);
      for (int i = 5; i < N - 1; i += 2) upd(X(i), x[X(i - 1)] * x[X(i + 1)]);
      if (N % 2 == 0) {
        upd(X(N - 1), x[X(N - 2)] * x[X(N)] * x[X(N + 1)]);
      } else {
        upd(X(N), x[X(N - 1)]);
        upd(X(N + 1), x[X(N - 1)]);
      }
      upd(X(1), y[X(3)]);
      upd(X(2), y[X(3)]);
      for (int i = 4; i < N - 1; i += 2) upd(X(i), y[X(i - 1)] * y[X(i + 1)]);
      if (N % 2 == 0) {
        upd(X(N), y[X(N - 1)]);
        upd(X(N + 1), y[X(N - 1)]);
      } else {
        upd(X(N - 1), y[X(N - 2)] * y[X(N)] * y[X(N + 1)]);
      }
      return y;
    }
    case Family::A:
      break;
  }
  throw std::logic_error("relation_step: no straight-line relations for this family");
}

inline std::vector<std::vector<Rat>> relation_table(const friezekit::FamilySpec& f, std::vector<Rat> x, int n_max) {
  std::vector<std::vector<Rat>> cols{x};
  for (int n = 0; n < n_max; ++n) cols.push_back(relation_step(f, cols.back()));
  return cols;
}

// x_{n+p+q} x_n = x_{n+p} x_{n+q} + 1.
inline std::vector<Rat> a_sequence(int p, int q, std::vector<Rat> x, int extra) {
  for (int k = 0; k < extra; ++k) {
    const std::size_t n = x.size() - static_cast<std::size_t>(p + q);
    x.push_back((x[n + p] * x[n + q] + 1) / x[n]);
  }
  return x;
}

}  // namespace oracle
