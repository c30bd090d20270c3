#pragma once

#include <cstddef>

#include "friezekit/dual.hpp"
#include "friezekit/errors.hpp"
#include "friezekit/laurent.hpp"
#include "friezekit/rational.hpp"

namespace friezekit {

// Uniform access to the value types a frieze can carry.
template <class V>
struct Arith;

template <>
struct Arith<Rat> {
  static Rat one(const Rat&) { return Rat(1); }
  static Rat constant(const Rat&, const Rat& c) { return c; }
  static Rat divide(const Rat& a, const Rat& b) {
    if (b == 0) throw BadSpecialization("zero denominator at specialization point");
    return a / b;
  }
  static std::size_t terms(const Rat&) { return 0; }
  static bool equal(const Rat& a, const Rat& b) { return a == b; }
};

template <>
struct Arith<DualRat> {
  static DualRat one(const DualRat&) { return DualRat(Rat(1)); }
  static DualRat constant(const DualRat&, const Rat& c) { return DualRat(c); }
  static DualRat divide(const DualRat& a, const DualRat& b) { return a / b; }
  static std::size_t terms(const DualRat&) { return 0; }
  static bool equal(const DualRat& a, const DualRat& b) { return a.value() == b.value(); }
};

template <>
struct Arith<LaurentPoly> {
  static LaurentPoly one(const LaurentPoly& like) { return LaurentPoly::constant(like.variables(), 1); }
  static LaurentPoly constant(const LaurentPoly& like, const Rat& c) {
    if (c.get_den() != 1) throw UsageError("non-integer constant in a Laurent polynomial");
    return LaurentPoly::constant(like.variables(), c.get_num());
  }
  static LaurentPoly divide(const LaurentPoly& a, const LaurentPoly& b) { return laurent_exact_div(a, b); }
  static std::size_t terms(const LaurentPoly& v) { return v.size(); }
  static bool equal(const LaurentPoly& a, const LaurentPoly& b) { return a == b; }
};

template <>
struct Arith<LaurentFrac> {
  static LaurentFrac one(const LaurentFrac& like) { return LaurentFrac(LaurentPoly::constant(like.num().variables(), 1)); }
  static LaurentFrac constant(const LaurentFrac& like, const Rat& c) {
    const VarsPtr& v = like.num().variables();
    return LaurentFrac(LaurentPoly::constant(v, c.get_num()), LaurentPoly::constant(v, c.get_den()));
  }
  static LaurentFrac divide(const LaurentFrac& a, const LaurentFrac& b) { return a / b; }
  static std::size_t terms(const LaurentFrac& v) { return v.size(); }
  static bool equal(const LaurentFrac& a, const LaurentFrac& b) { return a == b; }
};

}  // namespace friezekit
