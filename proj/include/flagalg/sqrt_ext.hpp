#pragma once

#include <string>

#include "flagalg/rational.hpp"

namespace flagalg {

// Exact element rat + irr*sqrt(base) of Q or of the real quadratic field
// Q(sqrt(base)).  base == 0 marks a plain rational (irr == 0); such values
// combine with any other base.  When base is a perfect square the value is
// folded into the rational part on construction, so equality is structural.
class SqrtExt {
 public:
  SqrtExt() = default;
  SqrtExt(int v) : rat_(v) {}
  SqrtExt(long v) : rat_(v) {}
  SqrtExt(const Integer& v) : rat_(v) {}
  SqrtExt(Rational r) : rat_(std::move(r)) {}
  SqrtExt(long base, Rational rat, Rational irr);

  static SqrtExt sqrt_of(long base) { return SqrtExt(base, 0, 1); }

  long base() const { return base_; }
  const Rational& rat_part() const { return rat_; }
  const Rational& irr_part() const { return irr_; }

  bool is_zero() const { return rat_ == 0 && irr_ == 0; }
  bool is_rational() const { return base_ == 0; }

  SqrtExt operator-() const;
  SqrtExt& operator+=(const SqrtExt& o);
  SqrtExt& operator-=(const SqrtExt& o);
  SqrtExt& operator*=(const SqrtExt& o);
  SqrtExt& operator/=(const SqrtExt& o);

  friend SqrtExt operator+(SqrtExt a, const SqrtExt& b) { return a += b; }
  friend SqrtExt operator-(SqrtExt a, const SqrtExt& b) { return a -= b; }
  friend SqrtExt operator*(SqrtExt a, const SqrtExt& b) { return a *= b; }
  friend SqrtExt operator/(SqrtExt a, const SqrtExt& b) { return a /= b; }

  friend bool operator==(const SqrtExt& a, const SqrtExt& b) {
    return a.base_ == b.base_ && a.rat_ == b.rat_ && a.irr_ == b.irr_;
  }
  friend bool operator!=(const SqrtExt& a, const SqrtExt& b) { return !(a == b); }

  SqrtExt inverse() const;

  // Sign of the real number rat + irr*sqrt(base).
  int sign() const;

  std::string to_string() const;

 private:
  void normalize();
  static long merge_base(long a, long b);

  long base_ = 0;
  Rational rat_;
  Rational irr_;
};

// q^{k/2} exactly, q >= 2.
SqrtExt q_half_pow(long q, long k);

// [n] at deformation parameter q^{1/2}: (q^{n/2} - q^{-n/2})/(q^{1/2} - q^{-1/2}).
SqrtExt quantum_int(long q, long n);

}  // namespace flagalg
