#include <doctest.h>

#include <random>

#include "flagalg/cyclotomic.hpp"
#include "flagalg/sqrt_ext.hpp"

using namespace flagalg;

namespace {

SqrtExt random_sqrt_ext(std::mt19937& rng, long base) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  Rational a(num(rng), den(rng)), b(num(rng), den(rng));
  a.canonicalize();
  b.canonicalize();
  return SqrtExt(base, a, b);
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(*parse_rational("3/4") == Rational(3, 4));
  CHECK(*parse_rational("-12") == Rational(-12));
  CHECK(*parse_rational("4/6") == Rational(2, 3));
  CHECK(!parse_rational("1/0"));
  CHECK(!parse_rational("x"));
  CHECK(!parse_rational("1/-2"));
  CHECK(!parse_rational(""));
}

TEST_CASE("q_half_pow examples") {
  CHECK(q_half_pow(2, 0) == SqrtExt(1));
  CHECK(q_half_pow(2, 3) == SqrtExt(2, 0, 2));
  CHECK(q_half_pow(3, -1) == SqrtExt(3, 0, Rational(1, 3)));
  // perfect squares collapse to the rational part
  CHECK(q_half_pow(4, 1) == SqrtExt(2));
  CHECK(q_half_pow(4, 1).is_rational());
  CHECK(q_half_pow(9, 3) == SqrtExt(27));
}

TEST_CASE("q_half_pow inverse law") {
  for (long q : {2L, 3L, 4L, 5L, 8L, 9L})
    for (long k = -20; k <= 20; ++k)
      CHECK(q_half_pow(q, k) * q_half_pow(q, -k) == SqrtExt(1));
}

TEST_CASE("quantum_int examples and recurrence") {
  CHECK(quantum_int(4, 0) == SqrtExt(0));
  CHECK(quantum_int(4, 1) == SqrtExt(1));
  CHECK(quantum_int(4, 2) == SqrtExt(Rational(5, 2)));
  for (long q : {2L, 3L, 4L, 5L}) {
    SqrtExt coeff = q_half_pow(q, 1) + q_half_pow(q, -1);
    for (long n = 1; n <= 12; ++n)
      CHECK(quantum_int(q, n + 1) == coeff * quantum_int(q, n) - quantum_int(q, n - 1));
  }
}

TEST_CASE("SqrtExt ring axioms on random triples") {
  std::mt19937 rng(42);
  for (long base : {2L, 3L, 5L, 7L}) {
    for (int it = 0; it < 200; ++it) {
      SqrtExt a = random_sqrt_ext(rng, base);
      SqrtExt b = random_sqrt_ext(rng, base);
      SqrtExt c = random_sqrt_ext(rng, base);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      if (!a.is_zero()) CHECK(a * a.inverse() == SqrtExt(1));
    }
  }
}

TEST_CASE("SqrtExt sign and base handling") {
  CHECK(SqrtExt(2, -1, 1).sign() > 0);   // sqrt(2) - 1 > 0
  CHECK(SqrtExt(2, -2, 1).sign() < 0);   // sqrt(2) - 2 < 0
  CHECK(SqrtExt(2, 1, -1).sign() < 0);   // 1 - sqrt(2) < 0
  CHECK(SqrtExt(0).sign() == 0);
  CHECK_THROWS(SqrtExt(2, 0, 1) + SqrtExt(3, 0, 1));
  CHECK(SqrtExt(2, 1, 0).base() == 0);  // no irrational part, base dropped
}

TEST_CASE("character values") {
  CHECK(character_value(2, 0) == CycRational(1));
  CHECK(character_value(2, 1) == CycRational(-1));
  CHECK(character_value(3, 1) + character_value(3, 2) == CycRational(-1));
  for (long p : {2L, 3L, 5L, 7L}) {
    CycRational sum;
    for (long a = 0; a < p; ++a) sum += character_value(p, a);
    CHECK(sum.is_zero());
  }
}

TEST_CASE("cyclotomic arithmetic") {
  for (long p : {2L, 3L, 5L, 7L}) {
    CycRational z = CycRational::zeta(p, 1);
    // zeta^p = 1 and conj(zeta) = zeta^{p-1}
    CycRational pw(1);
    for (long k = 0; k < p; ++k) pw *= z;
    CHECK(pw == CycRational(1));
    CHECK(z.conj() == CycRational::zeta(p, p - 1));
    CHECK(z * z.conj() == CycRational(1));
    // inverses of a few dense elements
    std::mt19937 rng(7 * p);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (int it = 0; it < 50; ++it) {
      CycRational x;
      for (long k = 0; k <= p - 2; ++k)
        x += CycRational(Rational(coeff(rng))) * CycRational::zeta(p, k);
      if (x.is_zero()) continue;
      CHECK(x * x.inverse() == CycRational(1));
    }
  }
}

TEST_CASE("cyclotomic fields do not mix") {
  CHECK_THROWS(CycRational::zeta(3, 1) + CycRational::zeta(5, 1));
  CHECK_THROWS(CycRational::zeta(4, 1));  // p must be prime
  // rationals embed into any field
  CHECK(CycRational(2) * CycRational::zeta(3, 1) == CycRational::zeta(3, 1) + CycRational::zeta(3, 1));
}

TEST_CASE("cyclotomic conjugation is a ring homomorphism") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (long p : {3L, 5L}) {
    for (int it = 0; it < 60; ++it) {
      CycRational x, y;
      for (long k = 0; k <= p - 2; ++k) {
        x += CycRational(Rational(coeff(rng))) * CycRational::zeta(p, k);
        y += CycRational(Rational(coeff(rng))) * CycRational::zeta(p, k);
      }
      CHECK((x * y).conj() == x.conj() * y.conj());
      CHECK((x + y).conj() == x.conj() + y.conj());
    }
  }
}
