#include "flagalg/sqrt_ext.hpp"

#include <stdexcept>

namespace flagalg {

namespace {

// Returns r >= 0 with r*r == n, or -1.
long exact_sqrt(long n) {
  if (n < 0) return -1;
  Integer z(n), root;
  if (mpz_perfect_square_p(z.get_mpz_t())) {
    mpz_sqrt(root.get_mpz_t(), z.get_mpz_t());
    return root.get_si();
  }
  return -1;
}

}  // namespace

SqrtExt::SqrtExt(long base, Rational rat, Rational irr)
    : base_(base), rat_(std::move(rat)), irr_(std::move(irr)) {
  if (base_ < 0) throw std::invalid_argument("SqrtExt: negative base");
  if (base_ == 0 && irr_ != 0) throw std::invalid_argument("SqrtExt: irrational part with base 0");
  normalize();
}

void SqrtExt::normalize() {
  if (base_ == 0) return;
  if (irr_ == 0) {
    base_ = 0;
    return;
  }
  long r = exact_sqrt(base_);
  if (r >= 0) {
    rat_ += irr_ * r;
    irr_ = 0;
    base_ = 0;
  }
}

long SqrtExt::merge_base(long a, long b) {
  if (a == 0) return b;
  if (b == 0) return a;
  if (a != b) throw std::invalid_argument("SqrtExt: mixed sqrt bases");
  return a;
}

SqrtExt SqrtExt::operator-() const {
  SqrtExt r = *this;
  r.rat_ = -r.rat_;
  r.irr_ = -r.irr_;
  return r;
}

SqrtExt& SqrtExt::operator+=(const SqrtExt& o) {
  base_ = merge_base(base_, o.base_);
  rat_ += o.rat_;
  irr_ += o.irr_;
  normalize();
  return *this;
}

SqrtExt& SqrtExt::operator-=(const SqrtExt& o) {
  base_ = merge_base(base_, o.base_);
  rat_ -= o.rat_;
  irr_ -= o.irr_;
  normalize();
  return *this;
}

SqrtExt& SqrtExt::operator*=(const SqrtExt& o) {
  long b = merge_base(base_, o.base_);
  Rational rat = rat_ * o.rat_;
  if (b != 0) rat += irr_ * o.irr_ * b;
  Rational irr = rat_ * o.irr_ + irr_ * o.rat_;
  base_ = b;
  rat_ = rat;
  irr_ = irr;
  normalize();
  return *this;
}

SqrtExt SqrtExt::inverse() const {
  if (is_zero()) throw std::invalid_argument("SqrtExt: inverse of zero");
  if (base_ == 0) return SqrtExt(Rational(1) / rat_);
  // (a + b sqrt(q))^{-1} = (a - b sqrt(q)) / (a^2 - b^2 q); the norm is
  // nonzero because sqrt(q) is irrational here.
  Rational norm = rat_ * rat_ - irr_ * irr_ * base_;
  return SqrtExt(base_, rat_ / norm, -irr_ / norm);
}

SqrtExt& SqrtExt::operator/=(const SqrtExt& o) { return *this *= o.inverse(); }

int SqrtExt::sign() const {
  int sr = sgn(rat_);
  int si = sgn(irr_);
  if (si == 0) return sr;
  if (sr == 0) return si;
  if (sr == si) return sr;
  // Opposite signs: compare |rat| with |irr|*sqrt(base) via squares.
  Rational lhs = rat_ * rat_;
  Rational rhs = irr_ * irr_ * base_;
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;  // cannot happen for irrational sqrt(base), kept for safety
  return c > 0 ? sr : si;
}

std::string SqrtExt::to_string() const {
  if (base_ == 0) return rat_.get_str();
  std::string s;
  if (rat_ != 0) s = rat_.get_str() + (sgn(irr_) >= 0 ? "+" : "");
  s += irr_.get_str() + "*sqrt(" + std::to_string(base_) + ")";
  return s;
}

SqrtExt q_half_pow(long q, long k) {
  if (q < 2) throw std::invalid_argument("q_half_pow: q must be >= 2");
  if (k % 2 == 0) return SqrtExt(pow_rational(Rational(q), k / 2));
  // k odd: q^{k/2} = q^{(k-1)/2} * sqrt(q); (k-1)/2 rounds toward zero
  // correctly for negative odd k as well since k-1 is even.
  return SqrtExt(q, Rational(0), pow_rational(Rational(q), (k - 1) / 2));
}

SqrtExt quantum_int(long q, long n) {
  if (q < 2) throw std::invalid_argument("quantum_int: q must be >= 2");
  if (n < 0) throw std::invalid_argument("quantum_int: n must be >= 0");
  SqrtExt sum;
  for (long j = 0; j < n; ++j) sum += q_half_pow(q, n - 1 - 2 * j);
  return sum;
}

}  // namespace flagalg
