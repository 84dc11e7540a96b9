#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace flagalg {

// Exact scalar substrate. GMP keeps mpq_class canonical: gcd(num, den) = 1,
// den > 0, zero is 0/1.
using Integer = mpz_class;
using Rational = mpq_class;

inline Integer pow_integer(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// x^k for integer k, negative k requires x != 0.
Rational pow_rational(const Rational& x, long k);

// Accepts "n" or "n/d" with optional sign; rejects d == 0.
std::optional<Rational> parse_rational(const std::string& s);

std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

}  // namespace flagalg
