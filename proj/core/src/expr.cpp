#include "friezekit/expr.hpp"

#include <algorithm>

namespace friezekit {

Expr::Expr() : Expr(constant(Rat(0))) {}

Expr Expr::var(int vertex, int offset) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->vertex = vertex;
  n->offset = offset;
  n->lo = n->hi = offset;
  return Expr(std::move(n));
}

Expr Expr::constant(const Rat& c) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = c;
  return Expr(std::move(n));
}

Expr Expr::kappa() {
  auto n = std::make_shared<Node>();
  n->op = Op::Kappa;
  n->kappa = true;
  return Expr(std::move(n));
}

Expr Expr::binary(Op op, const Expr& a, const Expr& b) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = a.node_;
  n->rhs = b.node_;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  if (x.lo <= x.hi && y.lo <= y.hi) {
    n->lo = std::min(x.lo, y.lo);
    n->hi = std::max(x.hi, y.hi);
  } else if (x.lo <= x.hi) {
    n->lo = x.lo;
    n->hi = x.hi;
  } else {
    n->lo = y.lo;
    n->hi = y.hi;
  }
  n->kappa = x.kappa || y.kappa;
  return Expr(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(Expr::Op::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(Expr::Op::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(Expr::Op::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(Expr::Op::Div, a, b); }

Expr Expr::operator-() const {
  auto n = std::make_shared<Node>(*node_);
  n->op = Op::Neg;
  n->lhs = node_;
  n->rhs.reset();
  return Expr(std::move(n));
}

namespace {

std::shared_ptr<const Expr::Node> shift_node(const std::shared_ptr<const Expr::Node>& e, int by) {
  if (!e) return e;
  auto n = std::make_shared<Expr::Node>(*e);
  if (n->op == Expr::Op::Var) n->offset += by;
  if (n->lo <= n->hi) {
    n->lo += by;
    n->hi += by;
  }
  n->lhs = shift_node(e->lhs, by);
  n->rhs = shift_node(e->rhs, by);
  return n;
}

int precedence(Expr::Op op) {
  switch (op) {
    case Expr::Op::Add:
    case Expr::Op::Sub:
      return 1;
    case Expr::Op::Mul:
    case Expr::Op::Div:
      return 2;
    case Expr::Op::Neg:
      return 3;
    default:
      return 4;
  }
}

std::string time_index(int offset) {
  if (offset == 0) return "n";
  return offset > 0 ? "n+" + std::to_string(offset) : "n" + std::to_string(offset);
}

std::string render(const Expr::Node& e, const std::vector<std::string>& labels) {
  auto sub = [&](const Expr::Node& c, bool right) {
    std::string s = render(c, labels);
    int pc = precedence(c.op), pe = precedence(e.op);
    bool wrap = pc < pe || (right && pc == pe && (e.op == Expr::Op::Sub || e.op == Expr::Op::Div));
    return wrap ? "(" + s + ")" : s;
  };
  switch (e.op) {
    case Expr::Op::Var: {
      std::string name = e.vertex >= 0 && static_cast<std::size_t>(e.vertex) < labels.size()
                             ? labels[static_cast<std::size_t>(e.vertex)]
                             : "X" + std::to_string(e.vertex);
      return name + "[" + time_index(e.offset) + "]";
    }
    case Expr::Op::Const:
      return to_string(e.value);
    case Expr::Op::Kappa:
      return "K";
    case Expr::Op::Add:
      return sub(*e.lhs, false) + " + " + sub(*e.rhs, true);
    case Expr::Op::Sub:
      return sub(*e.lhs, false) + " - " + sub(*e.rhs, true);
    case Expr::Op::Mul:
      return sub(*e.lhs, false) + "*" + sub(*e.rhs, true);
    case Expr::Op::Div:
      return sub(*e.lhs, false) + "/" + sub(*e.rhs, true);
    case Expr::Op::Neg:
      return "-" + sub(*e.lhs, true);
  }
  return "?";
}

}  // namespace

Expr Expr::shifted(int by) const { return Expr(shift_node(node_, by)); }

std::string Expr::to_string(const std::vector<std::string>& labels) const { return render(*node_, labels); }

}  // namespace friezekit
