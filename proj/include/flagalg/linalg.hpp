#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace flagalg {

// Square sparse matrix over an exact field scalar F (default-constructed
// value must be the zero of F).
template <class F>
struct SparseMat {
  int n = 0;
  std::vector<std::map<int, F>> rows;

  SparseMat() = default;
  explicit SparseMat(int dim) : n(dim), rows(dim) {}

  static SparseMat identity(int dim) {
    SparseMat I(dim);
    for (int i = 0; i < dim; ++i) I.rows[i][i] = F(1);
    return I;
  }

  void set(int i, int j, F v) {
    if (v == F()) {
      rows[i].erase(j);
      return;
    }
    rows[i][j] = std::move(v);
  }

  F get(int i, int j) const {
    auto it = rows[i].find(j);
    return it == rows[i].end() ? F() : it->second;
  }

  long long nnz() const {
    long long c = 0;
    for (const auto& r : rows) c += static_cast<long long>(r.size());
    return c;
  }

  bool is_zero() const {
    for (const auto& r : rows)
      for (const auto& [j, v] : r)
        if (!(v == F())) return false;
    return true;
  }

  SparseMat transpose() const {
    SparseMat T(n);
    for (int i = 0; i < n; ++i)
      for (const auto& [j, v] : rows[i]) T.rows[j][i] = v;
    return T;
  }

  SparseMat& operator+=(const SparseMat& o) {
    for (int i = 0; i < n; ++i)
      for (const auto& [j, v] : o.rows[i]) {
        F s = get(i, j) + v;
        set(i, j, s);
      }
    return *this;
  }

  SparseMat& operator-=(const SparseMat& o) {
    for (int i = 0; i < n; ++i)
      for (const auto& [j, v] : o.rows[i]) {
        F s = get(i, j) - v;
        set(i, j, s);
      }
    return *this;
  }

  friend SparseMat operator+(SparseMat a, const SparseMat& b) { return a += b; }
  friend SparseMat operator-(SparseMat a, const SparseMat& b) { return a -= b; }

  friend SparseMat operator*(const SparseMat& a, const SparseMat& b) {
    SparseMat c(a.n);
    for (int i = 0; i < a.n; ++i)
      for (const auto& [k, av] : a.rows[i])
        for (const auto& [j, bv] : b.rows[k]) {
          auto it = c.rows[i].find(j);
          if (it == c.rows[i].end())
            c.rows[i][j] = av * bv;
          else
            it->second += av * bv;
        }
    c.prune();
    return c;
  }

  friend SparseMat operator*(const F& s, SparseMat a) {
    for (auto& r : a.rows)
      for (auto& [j, v] : r) v = s * v;
    a.prune();
    return a;
  }

  void prune() {
    for (auto& r : rows)
      for (auto it = r.begin(); it != r.end();)
        it = (it->second == F()) ? r.erase(it) : std::next(it);
  }

  friend bool operator==(const SparseMat& a, const SparseMat& b) {
    SparseMat d = a;
    d -= b;
    return d.is_zero();
  }

  std::vector<F> apply(const std::vector<F>& v) const {
    std::vector<F> out(n, F());
    for (int i = 0; i < n; ++i)
      for (const auto& [j, a] : rows[i]) out[i] += a * v[j];
    return out;
  }

  // First entry where *this and o differ: (row, col, lhs, rhs).
  bool first_diff(const SparseMat& o, int& i, int& j, F& lhs, F& rhs) const {
    for (int r = 0; r < n; ++r) {
      std::map<int, F> cols = rows[r];
      for (const auto& [c, v] : o.rows[r])
        if (!cols.count(c)) cols[c] = F();
      for (const auto& [c, v] : cols) {
        F b = o.get(r, c);
        if (!(v == b)) {
          i = r;
          j = c;
          lhs = v;
          rhs = b;
          return true;
        }
      }
    }
    return false;
  }
};

template <class F, class G>
SparseMat<G> convert_sparse(const SparseMat<F>& a) {
  SparseMat<G> out(a.n);
  for (int i = 0; i < a.n; ++i)
    for (const auto& [j, v] : a.rows[i]) out.rows[i][j] = G(v);
  return out;
}

// Dense matrix over an exact field with deterministic (lowest-index pivot)
// Gaussian elimination.
template <class F>
struct DenseMat {
  int r = 0, c = 0;
  std::vector<F> a;

  DenseMat() = default;
  DenseMat(int rows_, int cols_) : r(rows_), c(cols_), a(static_cast<size_t>(rows_) * cols_) {}

  F& at(int i, int j) { return a[static_cast<size_t>(i) * c + j]; }
  const F& at(int i, int j) const { return a[static_cast<size_t>(i) * c + j]; }

  static DenseMat identity(int n) {
    DenseMat I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = F(1);
    return I;
  }

  friend DenseMat operator*(const DenseMat& x, const DenseMat& y) {
    if (x.c != y.r) throw std::invalid_argument("DenseMat: shape mismatch");
    DenseMat z(x.r, y.c);
    for (int i = 0; i < x.r; ++i)
      for (int k = 0; k < x.c; ++k) {
        const F& v = x.at(i, k);
        if (v == F()) continue;
        for (int j = 0; j < y.c; ++j) z.at(i, j) += v * y.at(k, j);
      }
    return z;
  }

  friend DenseMat operator-(DenseMat x, const DenseMat& y) {
    for (size_t k = 0; k < x.a.size(); ++k) x.a[k] = x.a[k] - y.a[k];
    return x;
  }

  friend bool operator==(const DenseMat& x, const DenseMat& y) {
    return x.r == y.r && x.c == y.c && x.a == y.a;
  }

  bool is_zero() const {
    for (const auto& v : a)
      if (!(v == F())) return false;
    return true;
  }

  DenseMat col(int j) const {
    DenseMat v(r, 1);
    for (int i = 0; i < r; ++i) v.at(i, 0) = at(i, j);
    return v;
  }
};

// In-place reduced row echelon form; returns pivot column indices.
template <class F>
std::vector<int> rref(DenseMat<F>& M) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < M.c && row < M.r; ++col) {
    int piv = -1;
    for (int i = row; i < M.r; ++i)
      if (!(M.at(i, col) == F())) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < M.c; ++j) std::swap(M.at(piv, j), M.at(row, j));
    F f = M.at(row, col);
    for (int j = col; j < M.c; ++j) M.at(row, j) = M.at(row, j) / f;
    for (int i = 0; i < M.r; ++i) {
      if (i == row) continue;
      F g = M.at(i, col);
      if (g == F()) continue;
      for (int j = col; j < M.c; ++j) M.at(i, j) = M.at(i, j) - g * M.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
int rank_of(DenseMat<F> M) {
  return static_cast<int>(rref(M).size());
}

// Columns spanning ker(M), one per free column, in ascending free-column
// order with a 1 at the free coordinate.
template <class F>
DenseMat<F> nullspace(DenseMat<F> M) {
  std::vector<int> pivots = rref(M);
  std::vector<bool> is_pivot(M.c, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < M.c; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  DenseMat<F> K(M.c, static_cast<int>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    K.at(fc, static_cast<int>(k)) = F(1);
    for (size_t pi = 0; pi < pivots.size(); ++pi)
      K.at(pivots[pi], static_cast<int>(k)) = F() - M.at(static_cast<int>(pi), fc);
  }
  return K;
}

// Inverse of a square matrix; throws if singular.
template <class F>
DenseMat<F> inverse(const DenseMat<F>& A) {
  if (A.r != A.c) throw std::invalid_argument("inverse: not square");
  DenseMat<F> W(A.r, 2 * A.c);
  for (int i = 0; i < A.r; ++i) {
    for (int j = 0; j < A.c; ++j) W.at(i, j) = A.at(i, j);
    W.at(i, A.c + i) = F(1);
  }
  std::vector<int> piv = rref(W);
  if (static_cast<int>(piv.size()) != A.r || piv.back() >= A.c)
    throw std::runtime_error("inverse: singular matrix");
  DenseMat<F> inv(A.r, A.c);
  for (int i = 0; i < A.r; ++i)
    for (int j = 0; j < A.c; ++j) inv.at(i, j) = W.at(i, A.c + j);
  return inv;
}

// Solves A X = B for A with full column rank (A.r >= A.c); throws when the
// system is inconsistent (B outside the column span of A).
template <class F>
DenseMat<F> solve_in_span(const DenseMat<F>& A, const DenseMat<F>& B) {
  if (A.r != B.r) throw std::invalid_argument("solve_in_span: shape mismatch");
  DenseMat<F> W(A.r, A.c + B.c);
  for (int i = 0; i < A.r; ++i) {
    for (int j = 0; j < A.c; ++j) W.at(i, j) = A.at(i, j);
    for (int j = 0; j < B.c; ++j) W.at(i, A.c + j) = B.at(i, j);
  }
  std::vector<int> piv = rref(W);
  for (int p : piv)
    if (p >= A.c) throw std::runtime_error("solve_in_span: inconsistent system");
  if (static_cast<int>(piv.size()) != A.c)
    throw std::runtime_error("solve_in_span: matrix does not have full column rank");
  DenseMat<F> X(A.c, B.c);
  for (int i = 0; i < A.c; ++i)
    for (int j = 0; j < B.c; ++j) X.at(i, j) = W.at(i, A.c + j);
  return X;
}

}  // namespace flagalg
