#pragma once

#include <string>
#include <vector>

#include "flagalg/rational.hpp"

namespace flagalg {

// Exact element of the cyclotomic field Q(zeta_p), p prime, in the power
// basis 1, zeta, ..., zeta^{p-2}; the relation 1 + zeta + ... + zeta^{p-1} = 0
// is applied eagerly.  p == 0 marks a plain rational, which combines with
// any prime.
class CycRational {
 public:
  CycRational() = default;
  CycRational(int v) : c_(1, Rational(v)) {}
  CycRational(long v) : c_(1, Rational(v)) {}
  CycRational(Rational r) : c_(1, std::move(r)) {}

  static CycRational zeta(long p, long k);

  long p() const { return p_; }
  // Coefficient of zeta^k, 0 <= k <= p-2.
  Rational coeff(long k) const;

  bool is_zero() const;
  bool is_rational() const;
  Rational rational_value() const;  // requires is_rational()

  CycRational conj() const;  // zeta^k -> zeta^{p-k}
  CycRational inverse() const;

  CycRational operator-() const;
  CycRational& operator+=(const CycRational& o);
  CycRational& operator-=(const CycRational& o);
  CycRational& operator*=(const CycRational& o);
  CycRational& operator/=(const CycRational& o);

  friend CycRational operator+(CycRational a, const CycRational& b) { return a += b; }
  friend CycRational operator-(CycRational a, const CycRational& b) { return a -= b; }
  friend CycRational operator*(CycRational a, const CycRational& b) { return a *= b; }
  friend CycRational operator/(CycRational a, const CycRational& b) { return a /= b; }

  friend bool operator==(const CycRational& a, const CycRational& b);
  friend bool operator!=(const CycRational& a, const CycRational& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void lift_to(long p);
  void add_power(long e, const Rational& coeff);

  long p_ = 0;
  std::vector<Rational> c_;  // size p-1 when p_ > 0, else size <= 1
};

// zeta_p^a, the fixed nontrivial additive character a -> zeta_p^a of F_p.
CycRational character_value(long p, long a);

}  // namespace flagalg
