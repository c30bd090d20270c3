#include "friezekit/dual.hpp"

#include "friezekit/errors.hpp"

namespace friezekit {

namespace {

void widen(std::vector<Rat>& d, std::size_t n) {
  if (d.size() < n) d.resize(n, Rat(0));
}

}  // namespace

DualRat DualRat::variable(Rat value, std::size_t slots, std::size_t slot) {
  if (slot >= slots) throw UsageError("dual slot out of range");
  std::vector<Rat> d(slots, Rat(0));
  d[slot] = 1;
  return DualRat(std::move(value), std::move(d));
}

Rat DualRat::derivative(std::size_t slot) const { return slot < d_.size() ? d_[slot] : Rat(0); }

std::vector<Rat> DualRat::gradient(std::size_t slots) const {
  std::vector<Rat> g = d_;
  widen(g, slots);
  return g;
}

DualRat DualRat::operator-() const {
  DualRat r(-value_, d_);
  for (auto& x : r.d_) x = -x;
  return r;
}

DualRat& DualRat::operator+=(const DualRat& o) {
  value_ += o.value_;
  widen(d_, o.d_.size());
  for (std::size_t i = 0; i < o.d_.size(); ++i) d_[i] += o.d_[i];
  return *this;
}

DualRat& DualRat::operator-=(const DualRat& o) {
  value_ -= o.value_;
  widen(d_, o.d_.size());
  for (std::size_t i = 0; i < o.d_.size(); ++i) d_[i] -= o.d_[i];
  return *this;
}

DualRat& DualRat::operator*=(const DualRat& o) {
  // (u v)' = u' v + u v'
  for (auto& x : d_) x *= o.value_;
  widen(d_, o.d_.size());
  for (std::size_t i = 0; i < o.d_.size(); ++i) d_[i] += value_ * o.d_[i];
  value_ *= o.value_;
  return *this;
}

DualRat& DualRat::operator/=(const DualRat& o) {
  if (o.value_ == 0) throw BadSpecialization("dual division by zero");
  // (u / v)' = (u' - (u/v) v') / v
  Rat q = value_ / o.value_;
  widen(d_, o.d_.size());
  for (std::size_t i = 0; i < d_.size(); ++i) {
    Rat di = d_[i];
    if (i < o.d_.size()) di -= q * o.d_[i];
    d_[i] = di / o.value_;
  }
  value_ = std::move(q);
  return *this;
}

DualRat pow_int(const DualRat& x, long e) {
  if (e == 0) return DualRat(Rat(1));
  if (x.value() == 0 && e < 0) throw BadSpecialization("zero raised to a negative power");
  // d(x^e) = e x^(e-1) dx
  Rat v = pow_int(x.value(), e);
  Rat scale = Rat(e) * pow_int(x.value(), e - 1);
  std::vector<Rat> d = x.derivatives();
  for (auto& di : d) di *= scale;
  return DualRat(std::move(v), std::move(d));
}

}  // namespace friezekit
