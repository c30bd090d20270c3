#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "friezekit/rational.hpp"

namespace friezekit {

inline constexpr std::size_t kMaxVariables = 24;

// Ordered list of variable names shared by every polynomial of one ring.
class Variables {
 public:
  explicit Variables(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t index(std::string_view name) const;

  bool operator==(const Variables& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
};

using VarsPtr = std::shared_ptr<const Variables>;
VarsPtr make_variables(std::vector<std::string> names);
bool same_ring(const VarsPtr& a, const VarsPtr& b);

struct Monomial {
  std::array<std::int16_t, kMaxVariables> exp{};

  int degree() const;
  bool operator==(const Monomial& o) const { return exp == o.exp; }
};

// Graded lexicographic order: total degree first, then lexicographic.
bool grlex_less(const Monomial& a, const Monomial& b);

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(b, a); }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

// Sparse Laurent polynomial with big-integer coefficients. Terms are kept
// sorted in decreasing grlex order with no zero coefficients, so equality is
// structural.
class LaurentPoly {
 public:
  struct Term {
    Monomial mono;
    BigInt coeff;
  };

  explicit LaurentPoly(VarsPtr vars);

  static LaurentPoly constant(VarsPtr vars, const BigInt& c);
  static LaurentPoly variable(VarsPtr vars, std::size_t i);
  static LaurentPoly variable(VarsPtr vars, std::string_view name);
  static LaurentPoly monomial(VarsPtr vars, const Monomial& m, const BigInt& c);
  // Accepts terms in any order, merges duplicates, drops zeros.
  static LaurentPoly from_terms(VarsPtr vars, std::vector<Term> terms);

  const VarsPtr& variables() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const;

  // Componentwise minimum exponent over all terms (zero polynomial: zeros).
  Monomial min_exponents() const;
  bool coefficients_positive() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

  LaurentPoly shifted(const Monomial& by, bool negate) const;
  Rat eval(const std::vector<Rat>& point) const;
  Rat eval(const std::map<std::string, Rat>& point) const;
  LaurentPoly partial(std::size_t v) const;
  std::string to_string() const;

 private:
  VarsPtr vars_;
  std::vector<Term> terms_;
};

LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b);
// q with q * den == num; throws DivisionNotExact otherwise.
LaurentPoly laurent_exact_div(const LaurentPoly& num, const LaurentPoly& den);
Rat laurent_eval(const LaurentPoly& p, const std::map<std::string, Rat>& point);
LaurentPoly laurent_partial(const LaurentPoly& p, std::string_view v);

// Quotient of two Laurent polynomials, reduced to den == 1 whenever the
// division is exact. Used where symbolic identities involve division by
// non-monomials (periodic quantities).
class LaurentFrac {
 public:
  LaurentFrac(LaurentPoly num);
  LaurentFrac(LaurentPoly num, LaurentPoly den);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_laurent() const { return den_.is_one(); }
  std::size_t size() const { return num_.size() + den_.size(); }

  friend LaurentFrac operator+(const LaurentFrac& a, const LaurentFrac& b);
  friend LaurentFrac operator-(const LaurentFrac& a, const LaurentFrac& b);
  friend LaurentFrac operator*(const LaurentFrac& a, const LaurentFrac& b);
  friend LaurentFrac operator/(const LaurentFrac& a, const LaurentFrac& b);
  LaurentFrac operator-() const;
  // Cross-multiplied comparison.
  friend bool operator==(const LaurentFrac& a, const LaurentFrac& b);

  std::string to_string() const;

 private:
  void reduce();

  LaurentPoly num_;
  LaurentPoly den_;
};

}  // namespace friezekit
