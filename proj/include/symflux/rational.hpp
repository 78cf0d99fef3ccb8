#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace symflux {

// Exact rational scalar.  GMP keeps values canonical (lowest terms, positive
// denominator) provided every value is materialised as mpq_class -- beware
// gmpxx expression templates when calling member functions on sums.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p" or "p/q" with optional sign, base 10.
inline Rat rat_parse(const std::string& text) {
  Rat r(text);  // throws std::invalid_argument on malformed input
  if (r.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& value) { return value.get_str(); }

// Integer power with negative exponents allowed for nonzero base.
inline Rat rat_pow(const Rat& base, long exp) {
  if (exp == 0) return Rat(1);
  if (base == 0) {
    if (exp < 0) throw std::domain_error("zero raised to a negative power");
    return Rat(0);
  }
  mpz_class num, den;
  unsigned long k = static_cast<unsigned long>(exp < 0 ? -exp : exp);
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), k);
  Rat r = exp > 0 ? Rat(num, den) : Rat(den, num);
  r.canonicalize();
  return r;
}

inline Rat rat_factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative number");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rat(f);
}

}  // namespace symflux
