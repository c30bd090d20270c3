#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace friezekit {

// gmpxx keeps mpq_class canonical (positive denominator, reduced) after
// every arithmetic operation; only raw construction needs canonicalize().
using BigInt = mpz_class;
using Rat = mpq_class;

Rat make_rat(const BigInt& num, const BigInt& den);
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);
std::string to_string(const BigInt& z);

// r^e for any integer e; throws BadSpecialization for 0^e with e < 0.
Rat pow_int(const Rat& r, long e);

}  // namespace friezekit
