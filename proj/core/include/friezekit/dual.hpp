#pragma once

#include <cstddef>
#include <vector>

#include "friezekit/rational.hpp"

namespace friezekit {

// Forward-mode dual number over exact rationals. An empty derivative vector
// stands for the zero gradient, so constants cost no allocation.
class DualRat {
 public:
  DualRat() = default;
  DualRat(Rat value) : value_(std::move(value)) {}  // NOLINT: constants convert implicitly
  DualRat(Rat value, std::vector<Rat> derivatives) : value_(std::move(value)), d_(std::move(derivatives)) {}

  // Independent variable number `slot` out of `slots`.
  static DualRat variable(Rat value, std::size_t slots, std::size_t slot);

  const Rat& value() const { return value_; }
  // Derivative in a slot; zero when the gradient is not materialized.
  Rat derivative(std::size_t slot) const;
  const std::vector<Rat>& derivatives() const { return d_; }
  std::vector<Rat> gradient(std::size_t slots) const;

  DualRat operator-() const;
  DualRat& operator+=(const DualRat& o);
  DualRat& operator-=(const DualRat& o);
  DualRat& operator*=(const DualRat& o);
  DualRat& operator/=(const DualRat& o);

  friend DualRat operator+(DualRat a, const DualRat& b) { return a += b; }
  friend DualRat operator-(DualRat a, const DualRat& b) { return a -= b; }
  friend DualRat operator*(DualRat a, const DualRat& b) { return a *= b; }
  friend DualRat operator/(DualRat a, const DualRat& b) { return a /= b; }

 private:
  Rat value_;
  std::vector<Rat> d_;
};

DualRat pow_int(const DualRat& x, long e);

}  // namespace friezekit
