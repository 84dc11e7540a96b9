#include "flagalg/cyclotomic.hpp"

#include <stdexcept>

namespace flagalg {

namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

CycRational CycRational::zeta(long p, long k) {
  if (!is_prime(p)) throw std::invalid_argument("CycRational: p must be prime");
  CycRational z;
  z.p_ = p;
  z.c_.assign(p - 1, Rational(0));
  z.add_power(k, Rational(1));
  return z;
}

void CycRational::lift_to(long p) {
  if (p_ == p) return;
  if (p_ != 0) throw std::invalid_argument("CycRational: mixed cyclotomic fields");
  Rational r = c_.empty() ? Rational(0) : c_[0];
  p_ = p;
  c_.assign(p - 1, Rational(0));
  c_[0] = r;
}

void CycRational::add_power(long e, const Rational& coeff) {
  e %= p_;
  if (e < 0) e += p_;
  if (e == p_ - 1) {
    // zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})
    for (auto& ck : c_) ck -= coeff;
  } else {
    c_[e] += coeff;
  }
}

Rational CycRational::coeff(long k) const {
  if (p_ == 0) {
    if (k == 0) return c_.empty() ? Rational(0) : c_[0];
    throw std::invalid_argument("CycRational: coeff index out of range");
  }
  if (k < 0 || k > p_ - 2) throw std::invalid_argument("CycRational: coeff index out of range");
  return c_[k];
}

bool CycRational::is_zero() const {
  for (const auto& ck : c_)
    if (ck != 0) return false;
  return true;
}

bool CycRational::is_rational() const {
  for (size_t k = 1; k < c_.size(); ++k)
    if (c_[k] != 0) return false;
  return true;
}

Rational CycRational::rational_value() const {
  if (!is_rational()) throw std::invalid_argument("CycRational: not rational");
  return c_.empty() ? Rational(0) : c_[0];
}

CycRational CycRational::conj() const {
  if (p_ == 0) return *this;
  CycRational r;
  r.p_ = p_;
  r.c_.assign(p_ - 1, Rational(0));
  for (long k = 0; k <= p_ - 2; ++k)
    if (c_[k] != 0) r.add_power((p_ - k) % p_, c_[k]);
  return r;
}

CycRational CycRational::operator-() const {
  CycRational r = *this;
  for (auto& ck : r.c_) ck = -ck;
  return r;
}

CycRational& CycRational::operator+=(const CycRational& o) {
  CycRational rhs = o;
  if (p_ == 0 && rhs.p_ != 0) lift_to(rhs.p_);
  if (rhs.p_ == 0 && p_ != 0) rhs.lift_to(p_);
  if (p_ != rhs.p_) throw std::invalid_argument("CycRational: mixed cyclotomic fields");
  if (c_.size() < rhs.c_.size()) c_.resize(rhs.c_.size(), Rational(0));
  for (size_t k = 0; k < rhs.c_.size(); ++k) c_[k] += rhs.c_[k];
  return *this;
}

CycRational& CycRational::operator-=(const CycRational& o) { return *this += -o; }

CycRational& CycRational::operator*=(const CycRational& o) {
  CycRational rhs = o;
  if (p_ == 0 && rhs.p_ != 0) lift_to(rhs.p_);
  if (rhs.p_ == 0 && p_ != 0) rhs.lift_to(p_);
  if (p_ != rhs.p_) throw std::invalid_argument("CycRational: mixed cyclotomic fields");
  if (p_ == 0) {
    Rational a = c_.empty() ? Rational(0) : c_[0];
    Rational b = rhs.c_.empty() ? Rational(0) : rhs.c_[0];
    c_.assign(1, a * b);
    return *this;
  }
  CycRational res;
  res.p_ = p_;
  res.c_.assign(p_ - 1, Rational(0));
  for (long i = 0; i <= p_ - 2; ++i) {
    if (c_[i] == 0) continue;
    for (long j = 0; j <= p_ - 2; ++j) {
      if (rhs.c_[j] == 0) continue;
      res.add_power(i + j, c_[i] * rhs.c_[j]);
    }
  }
  *this = res;
  return *this;
}

CycRational CycRational::inverse() const {
  if (is_zero()) throw std::invalid_argument("CycRational: inverse of zero");
  if (p_ == 0) return CycRational(Rational(1) / c_[0]);
  // Extended Euclid in Q[x] against Phi_p(x) = 1 + x + ... + x^{p-1}.
  using Poly = std::vector<Rational>;
  auto deg = [](const Poly& f) {
    for (long d = static_cast<long>(f.size()) - 1; d >= 0; --d)
      if (f[d] != 0) return d;
    return -1L;
  };
  Poly r0(p_, Rational(0));
  for (long k = 0; k < p_; ++k) r0[k] = 1;  // Phi_p
  Poly r1(c_.begin(), c_.end());
  Poly s0{Rational(0)}, s1{Rational(1)};  // coefficients of the input
  while (deg(r1) > 0) {
    long d0 = deg(r0), d1 = deg(r1);
    Poly quo(d0 - d1 + 1, Rational(0));
    Poly rem = r0;
    for (long k = d0; k >= d1; --k) {
      Rational f = rem[k] / r1[d1];
      if (f == 0) continue;
      quo[k - d1] = f;
      for (long j = 0; j <= d1; ++j) rem[k - d1 + j] -= f * r1[j];
    }
    Poly snew(std::max(s0.size(), quo.size() + s1.size()), Rational(0));
    for (size_t k = 0; k < s0.size(); ++k) snew[k] = s0[k];
    for (size_t a = 0; a < quo.size(); ++a) {
      if (quo[a] == 0) continue;
      for (size_t b = 0; b < s1.size(); ++b) snew[a + b] -= quo[a] * s1[b];
    }
    r0 = r1;
    r1 = rem;
    s0 = s1;
    s1 = snew;
  }
  if (deg(r1) != 0) throw std::runtime_error("CycRational: element not invertible mod Phi_p");
  Rational unit = r1[deg(r1)];
  CycRational res;
  res.p_ = p_;
  res.c_.assign(p_ - 1, Rational(0));
  for (size_t k = 0; k < s1.size(); ++k)
    if (s1[k] != 0) res.add_power(static_cast<long>(k), s1[k] / unit);
  return res;
}

CycRational& CycRational::operator/=(const CycRational& o) { return *this *= o.inverse(); }

bool operator==(const CycRational& a, const CycRational& b) {
  CycRational d = a;
  d -= b;
  return d.is_zero();
}

std::string CycRational::to_string() const {
  if (p_ == 0) return (c_.empty() ? Rational(0) : c_[0]).get_str();
  std::string s;
  bool first = true;
  for (long k = 0; k <= p_ - 2; ++k) {
    if (c_[k] == 0) continue;
    if (!first && sgn(c_[k]) > 0) s += "+";
    s += c_[k].get_str();
    if (k >= 1) s += "*z^" + std::to_string(k);
    first = false;
  }
  if (first) s = "0";
  return s;
}

CycRational character_value(long p, long a) { return CycRational::zeta(p, a); }

}  // namespace flagalg
