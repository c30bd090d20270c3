#include "friezekit/rng.hpp"

#include "friezekit/errors.hpp"

namespace friezekit {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw UsageError("empty random range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw UsageError("empty random range");
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Rat Rng::rational(std::int64_t lo, std::int64_t hi) {
  std::int64_t n = uniform(lo, hi);
  std::int64_t d = uniform(lo, hi);
  if (d == 0) d = 1;
  return make_rat(BigInt(static_cast<long>(n)), BigInt(static_cast<long>(d)));
}

std::vector<Rat> Rng::rationals(std::size_t n, std::int64_t lo, std::int64_t hi) {
  std::vector<Rat> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(rational(lo, hi));
  return out;
}

std::uint64_t trial_seed(std::uint64_t run_seed, std::uint64_t trial) {
  std::uint64_t z = run_seed + 0x9e3779b97f4a7c15ull * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace friezekit
