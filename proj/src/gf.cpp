#include "flagalg/gf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace flagalg {

namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomial arithmetic over F_p on coefficient vectors.
std::vector<int> poly_mul_mod(const std::vector<int>& a, const std::vector<int>& b,
                              const std::vector<int>& modulus, long p) {
  long e = static_cast<long>(modulus.size()) - 1;
  std::vector<int> prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = static_cast<int>((prod[i + j] + static_cast<long>(a[i]) * b[j]) % p);
  // Reduce by the monic modulus.
  for (long d = static_cast<long>(prod.size()) - 1; d >= e; --d) {
    int c = prod[d];
    if (c == 0) continue;
    for (long k = 0; k <= e; ++k) {
      long idx = d - e + k;
      prod[idx] = static_cast<int>(((prod[idx] - static_cast<long>(c) * modulus[k]) % p + p) % p);
    }
  }
  prod.resize(e, 0);
  return prod;
}

}  // namespace

Field Field::with_default_modulus(long q) {
  switch (q) {
    case 2:
    case 3:
    case 5:
    case 7:
      return Field(q, 1, {0, 1});
    case 4:
      return Field(2, 2, {1, 1, 1});
    case 8:
      return Field(2, 3, {1, 1, 0, 1});
    case 9:
      return Field(3, 2, {1, 0, 1});
    default:
      throw std::invalid_argument("Field: no default modulus for q=" + std::to_string(q));
  }
}

Field::Field(long p, long e, std::vector<int> modulus)
    : p_(p), e_(e), modulus_(std::move(modulus)) {
  if (!is_prime(p_)) throw std::invalid_argument("Field: p must be prime");
  if (e_ < 1 || e_ > 3) throw std::invalid_argument("Field: supported degrees are e <= 3");
  if (static_cast<long>(modulus_.size()) != e_ + 1)
    throw std::invalid_argument("Field: modulus must have e+1 coefficients");
  for (auto& c : modulus_) c = static_cast<int>(((c % p_) + p_) % p_);
  if (modulus_[e_] != 1) throw std::invalid_argument("Field: modulus must be monic");
  if (e_ >= 2) {
    // Degree 2 or 3: irreducible over F_p iff it has no root.
    for (long x = 0; x < p_; ++x) {
      long v = 0, xe = 1;
      for (long k = 0; k <= e_; ++k) {
        v = (v + modulus_[k] * xe) % p_;
        xe = (xe * x) % p_;
      }
      if (v == 0) throw std::invalid_argument("Field: modulus is reducible");
    }
  }
  q_ = 1;
  for (long k = 0; k < e_; ++k) q_ *= p_;

  add_.assign(q_ * q_, 0);
  mul_.assign(q_ * q_, 0);
  neg_.assign(q_, 0);
  inv_.assign(q_, 0);
  trace_.assign(q_, 0);
  for (int a = 0; a < q_; ++a) {
    std::vector<int> ca = to_coeffs(a);
    std::vector<int> cn(e_);
    for (long k = 0; k < e_; ++k) cn[k] = static_cast<int>((p_ - ca[k]) % p_);
    neg_[a] = from_coeffs(cn);
    for (int b = 0; b < q_; ++b) {
      std::vector<int> cb = to_coeffs(b);
      std::vector<int> cs(e_);
      for (long k = 0; k < e_; ++k) cs[k] = static_cast<int>((ca[k] + cb[k]) % p_);
      add_[a * q_ + b] = from_coeffs(cs);
      mul_[a * q_ + b] = from_coeffs(poly_mul_mod(ca, cb, modulus_, p_));
    }
  }
  for (int a = 1; a < q_; ++a)
    for (int b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) inv_[a] = b;
  for (int a = 0; a < q_; ++a) {
    int s = 0, x = a;
    for (long k = 0; k < e_; ++k) {
      s = add_[s * q_ + x];
      int xp = x;
      for (long t = 1; t < p_; ++t) xp = mul_[xp * q_ + x];  // x^p
      x = xp;
    }
    trace_[a] = to_coeffs(s)[0];  // trace lands in the prime field
  }
}

int Field::inv(int a) const {
  if (a == 0) throw std::invalid_argument("Field: inverse of zero");
  return inv_[a];
}

int Field::from_prime(long c) const { return static_cast<int>(((c % p_) + p_) % p_); }

std::vector<int> Field::to_coeffs(int a) const {
  std::vector<int> c(e_);
  for (long k = 0; k < e_; ++k) {
    c[k] = static_cast<int>(a % p_);
    a = static_cast<int>(a / p_);
  }
  return c;
}

int Field::from_coeffs(const std::vector<int>& c) const {
  int a = 0;
  for (long k = e_ - 1; k >= 0; --k) a = static_cast<int>(a * p_ + (((c[k] % p_) + p_) % p_));
  return a;
}

std::string Field::element_str(int a) const {
  if (e_ == 1) return std::to_string(a);
  std::vector<int> c = to_coeffs(a);
  std::string s;
  for (long k = 0; k < e_; ++k) {
    if (k) s += ",";
    s += std::to_string(c[k]);
  }
  return s;
}

int Field::parse_element(const std::string& s) const {
  std::vector<int> c;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      c.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) c.push_back(std::stoi(cur));
  if (c.empty()) throw std::invalid_argument("Field: empty element");
  if (static_cast<long>(c.size()) == 1 && e_ >= 1) {
    // Prime-field integer form is accepted in any field (the coefficient of 1).
    int v = c[0];
    if (v < 0 || v >= p_) throw std::invalid_argument("Field: element out of range");
    return v;
  }
  if (static_cast<long>(c.size()) != e_) throw std::invalid_argument("Field: bad coefficient count");
  for (int v : c)
    if (v < 0 || v >= p_) throw std::invalid_argument("Field: coefficient out of range");
  return from_coeffs(c);
}

int trace_to_prime(const Field& F, int x) { return F.trace(x); }

int FqMatrix::row_index(int label) const {
  for (int i = 0; i < nrows; ++i)
    if (row_label(i) == label) return i;
  throw std::invalid_argument("FqMatrix: row label not found");
}

int FqMatrix::col_index(int label) const {
  for (int j = 0; j < ncols; ++j)
    if (col_label(j) == label) return j;
  throw std::invalid_argument("FqMatrix: column label not found");
}

long rank(const FqMatrix& M) {
  if (M.nrows == 0 || M.ncols == 0) return 0;
  const Field& F = *M.F;
  std::vector<std::vector<int>> w(M.nrows, std::vector<int>(M.ncols));
  for (int i = 0; i < M.nrows; ++i)
    for (int j = 0; j < M.ncols; ++j) w[i][j] = M.at(i, j);
  long r = 0;
  for (int col = 0; col < M.ncols && r < M.nrows; ++col) {
    int piv = -1;
    for (int i = static_cast<int>(r); i < M.nrows; ++i)
      if (w[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(w[r], w[piv]);
    int f = F.inv(w[r][col]);
    for (int j = col; j < M.ncols; ++j) w[r][j] = F.mul(w[r][j], f);
    for (int i = 0; i < M.nrows; ++i) {
      if (i == static_cast<int>(r) || w[i][col] == 0) continue;
      int c = w[i][col];
      for (int j = col; j < M.ncols; ++j) w[i][j] = F.sub(w[i][j], F.mul(c, w[r][j]));
    }
    ++r;
  }
  return r;
}

FqMatrix submatrix_by_labels(const FqMatrix& M, const std::vector<int>& rows,
                             const std::vector<int>& cols) {
  FqMatrix S(*M.F, static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  S.row_labels = rows;
  S.col_labels = cols;
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j)
      S.at(static_cast<int>(i), static_cast<int>(j)) =
          M.at(M.row_index(rows[i]), M.col_index(cols[j]));
  return S;
}

FqMatrix bottom_pivot_reduce(const FqMatrix& B) {
  const Field& F = *B.F;
  int N = B.ncols;
  std::vector<std::vector<int>> rows;
  std::vector<int> pivots;
  for (int i = 0; i < B.nrows; ++i) {
    std::vector<int> r(N);
    for (int j = 0; j < N; ++j) r[j] = B.at(i, j);
    // Clear the coordinates at already-found pivots.
    for (size_t k = 0; k < pivots.size(); ++k) {
      int c = r[pivots[k] - 1];
      if (c == 0) continue;
      for (int j = 0; j < N; ++j) r[j] = F.sub(r[j], F.mul(c, rows[k][j]));
    }
    int t = -1;
    for (int j = N - 1; j >= 0; --j)
      if (r[j] != 0) {
        t = j;
        break;
      }
    if (t < 0) throw std::invalid_argument("bottom_pivot_reduce: dependent rows");
    int f = F.inv(r[t]);
    for (int j = 0; j < N; ++j) r[j] = F.mul(r[j], f);
    // Clear the new pivot coordinate from the earlier rows.
    for (size_t k = 0; k < rows.size(); ++k) {
      int c = rows[k][t];
      if (c == 0) continue;
      for (int j = 0; j < N; ++j) rows[k][j] = F.sub(rows[k][j], F.mul(c, r[j]));
    }
    rows.push_back(std::move(r));
    pivots.push_back(t + 1);
  }
  std::vector<size_t> order(rows.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t x, size_t y) { return pivots[x] < pivots[y]; });
  FqMatrix out(F, B.nrows, N);
  for (size_t i = 0; i < order.size(); ++i)
    for (int j = 0; j < N; ++j) out.at(static_cast<int>(i), j) = static_cast<uint8_t>(rows[order[i]][j]);
  return out;
}

std::vector<int> bottom_pivots(const FqMatrix& canon) {
  std::vector<int> piv;
  for (int i = 0; i < canon.nrows; ++i)
    for (int j = canon.ncols - 1; j >= 0; --j)
      if (canon.at(i, j) != 0) {
        piv.push_back(j + 1);
        break;
      }
  return piv;
}

std::string format_matrix(const FqMatrix& M) {
  std::string s;
  for (int i = 0; i < M.nrows; ++i) {
    for (int j = 0; j < M.ncols; ++j) {
      if (j) s += " ";
      s += M.F->element_str(M.at(i, j));
    }
    s += "\n";
  }
  return s;
}

FqMatrix parse_matrix(const Field& F, const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<int> row;
    std::string tok;
    while (ls >> tok) row.push_back(F.parse_element(tok));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) return FqMatrix(F, 0, 0);
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw std::invalid_argument("parse_matrix: ragged rows");
  FqMatrix M(F, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < M.nrows; ++i)
    for (int j = 0; j < M.ncols; ++j) M.at(i, j) = static_cast<uint8_t>(rows[i][j]);
  return M;
}

}  // namespace flagalg
