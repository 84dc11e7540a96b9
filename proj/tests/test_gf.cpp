#include <doctest.h>

#include <functional>
#include <random>
#include <set>
#include <stdexcept>

#include "flagalg/gf.hpp"

using namespace flagalg;

namespace {

// Independent rank oracle: largest k with a nonzero k x k minor, determinants
// by Laplace expansion.
int det_laplace(const Field& F, const std::vector<std::vector<int>>& m) {
  size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  int det = 0, sign = 0;
  for (size_t j = 0; j < n; ++j, sign ^= 1) {
    if (m[0][j] == 0) continue;
    std::vector<std::vector<int>> sub;
    for (size_t i = 1; i < n; ++i) {
      std::vector<int> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      sub.push_back(row);
    }
    int term = F.mul(m[0][j], det_laplace(F, sub));
    det = sign ? F.sub(det, term) : F.add(det, term);
  }
  return det;
}

long rank_by_minors(const FqMatrix& M) {
  const Field& F = *M.F;
  for (int k = std::min(M.nrows, M.ncols); k >= 1; --k) {
    // all k-subsets of rows and columns
    std::vector<int> rsel(k), csel(k);
    std::function<bool(int, int)> any_rows = [&](int start, int depth) -> bool {
      if (depth == k) {
        std::function<bool(int, int)> any_cols = [&](int cstart, int cdepth) -> bool {
          if (cdepth == k) {
            std::vector<std::vector<int>> sub(k, std::vector<int>(k));
            for (int i = 0; i < k; ++i)
              for (int j = 0; j < k; ++j) sub[i][j] = M.at(rsel[i], csel[j]);
            return det_laplace(F, sub) != 0;
          }
          for (int c = cstart; c < M.ncols; ++c) {
            csel[cdepth] = c;
            if (any_cols(c + 1, cdepth + 1)) return true;
          }
          return false;
        };
        return any_cols(0, 0);
      }
      for (int r = start; r < M.nrows; ++r) {
        rsel[depth] = r;
        if (any_rows(r + 1, depth + 1)) return true;
      }
      return false;
    };
    if (any_rows(0, 0)) return k;
  }
  return 0;
}

FqMatrix from_rows(const Field& F, const std::vector<std::vector<int>>& rows) {
  FqMatrix M(F, static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < M.nrows; ++i)
    for (int j = 0; j < M.ncols; ++j) M.at(i, j) = static_cast<uint8_t>(rows[i][j]);
  return M;
}

}  // namespace

TEST_CASE("field axioms exhaustively for q <= 9") {
  for (long q : {2L, 3L, 4L, 5L, 7L, 8L, 9L}) {
    Field F = Field::with_default_modulus(q);
    REQUIRE(F.q() == q);
    for (int a = 0; a < q; ++a) {
      CHECK(F.add(a, 0) == a);
      CHECK(F.mul(a, 1) == a);
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
      for (int b = 0; b < q; ++b) {
        CHECK(F.add(a, b) == F.add(b, a));
        CHECK(F.mul(a, b) == F.mul(b, a));
        for (int c = 0; c < q; ++c) {
          CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
          CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
        }
      }
    }
  }
}

TEST_CASE("field construction rejects bad moduli") {
  CHECK_THROWS(Field(4, 1, {0, 1}));         // p not prime
  CHECK_THROWS(Field(2, 2, {0, 0, 1}));      // t^2 reducible
  CHECK_THROWS(Field(2, 2, {1, 0, 1}));      // t^2+1 = (t+1)^2 over F_2
  CHECK_THROWS(Field(3, 2, {1, 0, 2}));      // not monic
  CHECK_NOTHROW(Field(3, 2, {1, 0, 1}));     // t^2+1 irreducible over F_3
  CHECK_THROWS(Field::with_default_modulus(6));
}

TEST_CASE("trace examples and properties") {
  Field F2 = Field::with_default_modulus(2);
  CHECK(trace_to_prime(F2, 1) == 1);
  Field F4 = Field::with_default_modulus(4);
  // elements of F_4: 0, 1, t, t+1 encoded 0,1,2,3 with modulus t^2+t+1
  CHECK(trace_to_prime(F4, 1) == 0);
  CHECK(trace_to_prime(F4, 2) == 1);  // Tr(t) = t + t^2 = 1

  for (long q : {2L, 3L, 4L, 5L, 8L, 9L}) {
    Field F = Field::with_default_modulus(q);
    std::set<int> image;
    for (int x = 0; x < q; ++x) {
      image.insert(F.trace(x));
      for (int y = 0; y < q; ++y)
        CHECK(F.trace(F.add(x, y)) == (F.trace(x) + F.trace(y)) % F.p());
      // F_p-linearity: scaling by prime subfield elements
      for (int c = 0; c < F.p(); ++c)
        CHECK(F.trace(F.mul(F.from_prime(c), x)) == (c * F.trace(x)) % F.p());
    }
    CHECK(static_cast<long>(image.size()) == F.p());  // surjective
  }
}

TEST_CASE("rank matches minor expansion on all F_2 matrices up to 3x3") {
  Field F = Field::with_default_modulus(2);
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c <= 3; ++c) {
      int cells = r * c;
      for (int code = 0; code < (1 << cells); ++code) {
        FqMatrix M(F, r, c);
        for (int k = 0; k < cells; ++k) M.a[k] = (code >> k) & 1;
        CHECK(rank(M) == rank_by_minors(M));
      }
    }
}

TEST_CASE("rank basics") {
  Field F2 = Field::with_default_modulus(2);
  Field F3 = Field::with_default_modulus(3);
  CHECK(rank(from_rows(F2, {{0, 0}, {0, 0}})) == 0);
  CHECK(rank(from_rows(F3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 3);
  CHECK(rank(from_rows(F2, {{1, 1}, {1, 1}})) == 1);
  CHECK(rank(FqMatrix(F2, 0, 0)) == 0);
}

TEST_CASE("bottom pivot reduction examples") {
  Field F2 = Field::with_default_modulus(2);
  FqMatrix a = bottom_pivot_reduce(from_rows(F2, {{1, 1}}));
  CHECK(a == from_rows(F2, {{1, 1}}));
  CHECK(bottom_pivots(a) == std::vector<int>{2});

  FqMatrix b = bottom_pivot_reduce(from_rows(F2, {{1, 0}, {1, 1}}));
  CHECK(b == from_rows(F2, {{1, 0}, {0, 1}}));
  CHECK(bottom_pivots(b) == std::vector<int>{1, 2});

  Field F3 = Field::with_default_modulus(3);
  FqMatrix c = bottom_pivot_reduce(from_rows(F3, {{1, 2, 0}, {0, 1, 1}}));
  CHECK(c == from_rows(F3, {{2, 1, 0}, {1, 0, 1}}));
  CHECK(bottom_pivots(c) == std::vector<int>{2, 3});

  CHECK_THROWS(bottom_pivot_reduce(from_rows(F2, {{1, 1}, {1, 1}})));
}

TEST_CASE("bottom pivot reduction is idempotent and basis independent") {
  std::mt19937 rng(5);
  for (long q : {2L, 3L, 4L}) {
    Field F = Field::with_default_modulus(q);
    std::uniform_int_distribution<int> elem(0, static_cast<int>(q) - 1);
    for (int it = 0; it < 100; ++it) {
      int N = 4, k = 1 + it % 3;
      FqMatrix B(F, k, N);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < N; ++j) B.at(i, j) = static_cast<uint8_t>(elem(rng));
      FqMatrix canon;
      try {
        canon = bottom_pivot_reduce(B);
      } catch (const std::invalid_argument&) {
        continue;  // dependent random rows
      }
      CHECK(bottom_pivot_reduce(canon) == canon);
      // random invertible row operations must not change the canonical form
      FqMatrix C = B;
      for (int step = 0; step < 6; ++step) {
        int i = static_cast<int>(rng() % k), j = static_cast<int>(rng() % k);
        int c = elem(rng);
        if (i == j) continue;
        for (int col = 0; col < N; ++col)
          C.at(i, col) = F.add(C.at(i, col), F.mul(c, C.at(j, col)));
      }
      CHECK(bottom_pivot_reduce(C) == canon);
    }
  }
}

TEST_CASE("matrix text round trip") {
  Field F4 = Field::with_default_modulus(4);
  FqMatrix M(F4, 2, 2);
  M.at(0, 0) = 2;  // t
  M.at(0, 1) = 1;
  M.at(1, 1) = 3;  // 1 + t
  std::string text = format_matrix(M);
  CHECK(text == "0,1 1,0\n0,0 1,1\n");
  CHECK(parse_matrix(F4, text) == M);

  Field F3 = Field::with_default_modulus(3);
  FqMatrix P = parse_matrix(F3, "1 2 0\n0 1 1\n");
  CHECK(P.nrows == 2);
  CHECK(P.at(0, 1) == 2);
  CHECK_THROWS(parse_matrix(F3, "1 2\n1\n"));
  CHECK_THROWS(parse_matrix(F3, "5\n"));
}
