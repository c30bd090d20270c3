#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "friezekit/rational.hpp"

namespace friezekit {

// std::mt19937_64 is fully specified by the standard; ranges are mapped by
// rejection sampling here rather than std distributions, whose output is
// implementation-defined. Together that makes draws identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  // Numerator and denominator independently uniform in [lo, hi].
  Rat rational(std::int64_t lo = 1, std::int64_t hi = 50);
  std::vector<Rat> rationals(std::size_t n, std::int64_t lo = 1, std::int64_t hi = 50);

 private:
  std::mt19937_64 engine_;
};

// Per-trial seed derived from the run seed (splitmix64 finalizer).
std::uint64_t trial_seed(std::uint64_t run_seed, std::uint64_t trial);

}  // namespace friezekit
