#pragma once

#include <memory>
#include <string>
#include <vector>

#include "friezekit/rational.hpp"

namespace friezekit {

// Expression over frieze entries X(vertex, n + offset), rational constants
// and the trace invariant K. Immutable; subtrees are shared.
class Expr {
 public:
  enum class Op { Var, Const, Kappa, Add, Sub, Mul, Div, Neg };

  struct Node {
    Op op = Op::Const;
    int vertex = 0;
    int offset = 0;
    Rat value;
    std::shared_ptr<const Node> lhs, rhs;
    // Offset window over Var leaves; empty when lo > hi.
    int lo = 1;
    int hi = 0;
    bool kappa = false;
  };

  Expr();  // the constant 0
  static Expr var(int vertex, int offset);
  static Expr constant(const Rat& c);
  static Expr kappa();

  Op op() const { return node_->op; }
  bool has_window() const { return node_->lo <= node_->hi; }
  int min_offset() const { return node_->lo; }
  int max_offset() const { return node_->hi; }
  bool uses_kappa() const { return node_->kappa; }

  Expr shifted(int by) const;
  std::string to_string(const std::vector<std::string>& labels) const;

  // Source provides: V var(int vertex, int time), V constant(const Rat&),
  // V kappa(), V divide(const V&, const V&).
  template <class V, class Source>
  V eval(const Source& src, int n) const {
    return eval_node<V>(*node_, src, n);
  }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr operator-() const;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Expr binary(Op op, const Expr& a, const Expr& b);

  template <class V, class Source>
  static V eval_node(const Node& e, const Source& src, int n) {
    switch (e.op) {
      case Op::Var:
        return src.var(e.vertex, n + e.offset);
      case Op::Const:
        return src.constant(e.value);
      case Op::Kappa:
        return src.kappa();
      case Op::Add:
        return eval_node<V>(*e.lhs, src, n) + eval_node<V>(*e.rhs, src, n);
      case Op::Sub:
        return eval_node<V>(*e.lhs, src, n) - eval_node<V>(*e.rhs, src, n);
      case Op::Mul:
        return eval_node<V>(*e.lhs, src, n) * eval_node<V>(*e.rhs, src, n);
      case Op::Div:
        return src.divide(eval_node<V>(*e.lhs, src, n), eval_node<V>(*e.rhs, src, n));
      case Op::Neg:
        return src.constant(Rat(0)) - eval_node<V>(*e.lhs, src, n);
    }
    return src.constant(Rat(0));
  }

  std::shared_ptr<const Node> node_;
};

inline Expr operator+(const Expr& a, long c) { return a + Expr::constant(Rat(c)); }
inline Expr operator-(const Expr& a, long c) { return a - Expr::constant(Rat(c)); }
inline Expr operator*(long c, const Expr& a) { return Expr::constant(Rat(c)) * a; }

}  // namespace friezekit
