#include "friezekit/rational.hpp"

#include "friezekit/errors.hpp"

namespace friezekit {

Rat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw UsageError("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rat(std::string_view text) {
  std::string s(text);
  Rat r;
  if (s.empty() || r.set_str(s, 10) != 0) throw UsageError("not a rational: '" + s + "'");
  if (r.get_den() == 0) throw UsageError("rational with zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(10); }
std::string to_string(const BigInt& z) { return z.get_str(10); }

Rat pow_int(const Rat& r, long e) {
  if (e == 0) return Rat(1);
  if (r == 0) {
    if (e < 0) throw BadSpecialization("zero raised to a negative power");
    return Rat(0);
  }
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), r.get_num_mpz_t(), k);
  mpz_pow_ui(d.get_mpz_t(), r.get_den_mpz_t(), k);
  return e < 0 ? make_rat(d, n) : make_rat(n, d);
}

}  // namespace friezekit
